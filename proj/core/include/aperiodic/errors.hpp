#pragma once

#include <stdexcept>
#include <string>

namespace aperiodic {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lattice / scheme construction
struct SingularBasis : Error { using Error::Error; };
struct InjectivityFailure : Error { using Error::Error; };
struct RegionTooLarge : Error { using Error::Error; };

// Windows
struct InvalidWindow : Error { using Error::Error; };
struct DegenerateWindow : Error { using Error::Error; };

// Model sets
struct NotNested : Error { using Error::Error; };
struct PlacementFailure : Error { using Error::Error; };

// Averaging
struct EmptyRegion : Error { using Error::Error; };
struct RangeTooLarge : Error { using Error::Error; };
struct InconsistentProvenance : Error { using Error::Error; };
struct StepTooCoarse : Error { using Error::Error; };

// Diffraction
struct ThresholdTooLow : Error { using Error::Error; };
struct AmbiguousDualMatch : Error { using Error::Error; };
struct FrequencyMismatch : Error { using Error::Error; };

// Torus parametrization
struct NoLatticeEmbedding : Error { using Error::Error; };
struct EmptyFeasibleBox : Error { using Error::Error; };

// Config / CLI
struct ConfigError : Error { using Error::Error; };

}  // namespace aperiodic
