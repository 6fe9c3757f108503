#include "aperiodic/io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "aperiodic/errors.hpp"

namespace aperiodic {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("io: cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_patch_csv(const std::string& path, const Patch& patch,
                     const std::string& config_hash) {
  auto out = open_out(path);
  out << "# config_hash=" << config_hash << "\n";
  const std::size_t D = patch.points.empty() ? 0 : patch.points.front().n.size();
  const std::size_t d = patch.points.empty() ? 0 : patch.points.front().x.size();
  const std::size_t m = patch.points.empty() ? 0 : patch.points.front().x_star.size();
  for (std::size_t i = 0; i < D; ++i) out << (i ? "," : "") << "n" << i;
  for (std::size_t i = 0; i < d; ++i) out << (D + i ? "," : "") << "x" << i;
  for (std::size_t i = 0; i < m; ++i) out << ",xstar" << i;
  if (D == 0) out << "n0,x0,xstar0";  // stable header even for empty patches
  out << "\n";
  for (const LatticePoint& p : patch.points) {
    bool first = true;
    for (long long n : p.n) { out << (first ? "" : ",") << n; first = false; }
    for (double x : p.x) out << "," << format_double(x);
    for (double xs : p.x_star) out << "," << format_double(xs);
    out << "\n";
  }
}

void write_patch_json(const std::string& path, const Patch& patch,
                      const std::string& config_hash) {
  nlohmann::json j;
  j["config_hash"] = config_hash;
  j["cps_id"] = patch.cps_id;
  j["window_id"] = patch.window_id;
  j["s"] = patch.s;
  j["t"] = patch.t;
  j["region"] = {{"lo", patch.region.lo}, {"hi", patch.region.hi}};
  j["count"] = patch.points.size();
  nlohmann::json pts = nlohmann::json::array();
  for (const LatticePoint& p : patch.points)
    pts.push_back({{"n", p.n}, {"x", p.x}, {"xstar", p.x_star}});
  j["points"] = std::move(pts);
  open_out(path) << j.dump(2) << "\n";
}

void write_spectrum_csv(const std::string& path, const DiffractionSpectrum& spectrum,
                        const std::string& config_hash) {
  auto out = open_out(path);
  out << "# config_hash=" << config_hash << "\n";
  out << "k,l,intensity\n";
  for (const Peak& p : spectrum.peaks) {
    for (std::size_t i = 0; i < p.k.size(); ++i) out << (i ? ";" : "") << format_double(p.k[i]);
    out << ",";
    for (std::size_t i = 0; i < p.l.size(); ++i) out << (i ? ";" : "") << format_double(p.l[i]);
    out << "," << format_double(p.intensity) << "\n";
  }
}

void write_scan_csv(const std::string& path, const ScanTable& table,
                    const std::string& config_hash) {
  auto out = open_out(path);
  out << "# config_hash=" << config_hash << "\n";
  out << "R,value_re,value_im,prediction_re,prediction_im,abs_error\n";
  for (const ScanRow& r : table.rows) {
    out << format_double(r.radius) << "," << format_double(r.value.real()) << ","
        << format_double(r.value.imag()) << "," << format_double(r.prediction.real()) << ","
        << format_double(r.prediction.imag()) << "," << format_double(r.abs_error) << "\n";
  }
}

void write_comparison_csv(const std::string& path, const ComparisonReport& report,
                          const std::string& config_hash) {
  auto out = open_out(path);
  out << "# config_hash=" << config_hash << "\n";
  out << "label,predicted_re,predicted_im,empirical_re,empirical_im,abs_error,tolerance,pass\n";
  for (const ComparisonRow& r : report.rows) {
    out << r.label << "," << format_double(r.predicted.real()) << ","
        << format_double(r.predicted.imag()) << "," << format_double(r.empirical.real()) << ","
        << format_double(r.empirical.imag()) << "," << format_double(r.abs_error) << ","
        << format_double(r.tolerance) << "," << (r.pass ? "1" : "0") << "\n";
  }
}

}  // namespace aperiodic
