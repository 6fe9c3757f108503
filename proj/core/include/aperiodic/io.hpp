#pragma once

#include <string>
#include <vector>

#include "aperiodic/averaging.hpp"
#include "aperiodic/diffraction.hpp"
#include "aperiodic/modelset.hpp"

namespace aperiodic {

// Deterministic double formatting (shortest round-trip form, '.' decimal).
std::string format_double(double v);

// All writers emit UTF-8 CSV with a '# config_hash=...' comment line, a
// header row, and deterministic row order.
void write_patch_csv(const std::string& path, const Patch& patch,
                     const std::string& config_hash);
void write_patch_json(const std::string& path, const Patch& patch,
                      const std::string& config_hash);
void write_spectrum_csv(const std::string& path, const DiffractionSpectrum& spectrum,
                        const std::string& config_hash);
void write_scan_csv(const std::string& path, const ScanTable& table,
                    const std::string& config_hash);
void write_comparison_csv(const std::string& path, const ComparisonReport& report,
                          const std::string& config_hash);

}  // namespace aperiodic
