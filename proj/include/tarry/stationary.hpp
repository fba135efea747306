#pragma once

// Window volumes |{xi : mu <= P(xi) <= mu + c}|, level profiles and the
// reconstruction of the oscillatory integral from a level profile.
//
// Both estimators work from a sorted sample of phase values: the grid
// method uses the centres of a 2^-m grid, the Monte Carlo method uses
// counter-seeded uniform points. Window queries are then two binary
// searches.

#include <cstdint>
#include <utility>
#include <vector>

#include "tarry/monomial.hpp"
#include "tarry/quadrature.hpp"

namespace tarry {

enum class VolumeMethod { grid, montecarlo };

const char* to_string(VolumeMethod m);
VolumeMethod volume_method_from_string(const std::string& s);

struct SampleOptions {
  VolumeMethod method = VolumeMethod::grid;
  /// Number of sample points. The grid method rounds up to 4^m cells with
  /// m clamped to [5, 14]; the default gives h = 2^-10.
  std::uint64_t budget = std::uint64_t{1} << 20;
  std::uint64_t seed = 0;
};

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
  VolumeMethod method = VolumeMethod::grid;
  std::uint64_t samples_or_resolution = 0;  // cells per side for grid
  std::uint64_t seed = 0;
};

/// Sorted phase values over the sample points of [0,1]^2.
class PhaseSamples {
 public:
  PhaseSamples(const PhaseCoefficients& x, const SampleOptions& opts = {});

  const PhaseCoefficients& phase() const { return phase_; }
  const SampleOptions& options() const { return opts_; }
  const std::vector<double>& sorted_values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  /// Grid cells per side (grid method) or 0.
  int grid_side() const { return side_; }

  /// Fraction of samples with mu <= P <= mu + c.
  double fraction(double mu, double c) const;
  VolumeEstimate window(double mu, double c) const;

 private:
  PhaseCoefficients phase_;
  SampleOptions opts_;
  int side_ = 0;
  std::vector<double> values_;
};

/// Bracket [lo, hi] containing P([0,1]^2): extremes over a 65 x 65 lattice
/// widened by a gradient bound times the lattice half-diagonal.
std::pair<double, double> phase_range(const PhaseCoefficients& x);

VolumeEstimate window_volume(const PhaseCoefficients& x, double mu, double c,
                             const SampleOptions& opts = {});

struct SupWindow {
  double mu_star = 0.0;
  VolumeEstimate measure;
};

/// Approximate sup over mu of the window volume: 512-point scan of
/// [min P - c, max P] and three rounds of tenfold local refinement.
SupWindow sup_window_measure(const PhaseSamples& samples, double c);
SupWindow sup_window_measure(const PhaseCoefficients& x, double c,
                             const SampleOptions& opts = {});

/// Exact sup over mu of the sample fraction, by a sliding window over the
/// sorted values. Used to check the scan.
double sup_window_fraction_exact(const PhaseSamples& samples, double c);

struct LevelProfile {
  double delta0 = 0.1;
  std::vector<double> beta;
  std::vector<double> value;
  std::vector<double> std_error;
  VolumeMethod method = VolumeMethod::grid;
  std::uint64_t resolution = 0;
  std::uint64_t seed = 0;
  /// Size of estimator jitter: 2h for the grid, three standard errors for
  /// Monte Carlo. Steps below it are not read as changes of direction.
  double noise_floor = 0.0;
};

/// values[i] = |{xi : beta_i - delta0 <= P <= beta_i + delta0}| on a
/// uniform grid over [min P - delta0, max P + delta0], extended by one step
/// on each side so that the profile starts and ends at zero. n_beta = 0
/// picks the smallest count with spacing <= 1/256 (at least 256; explicit
/// counts must be >= 64).
LevelProfile level_profile(const PhaseSamples& samples, double delta0, int n_beta = 0);
LevelProfile level_profile(const PhaseCoefficients& x, double delta0, int n_beta = 0,
                           const SampleOptions& opts = {});

struct MonotonicityReport {
  int change_count = 0;
  std::vector<double> breakpoints;
  double tolerance = 1e-3;
};

/// Counts alternations between rising and falling stretches. Moves smaller
/// than max(tolerance * max(value), noise_floor) count as flat, and a
/// reversal is only registered once the profile has retreated from its last
/// extreme by more than that amount, so plateaus merge with their
/// neighbours. Breakpoints are the beta values of the turning extremes.
MonotonicityReport monotonicity_changes(const LevelProfile& profile,
                                        double tolerance = 1e-3);

struct Reconstruction {
  cplx value{0.0, 0.0};
  double std_error = 0.0;  // Monte Carlo only
  LevelProfile profile;
};

/// (int_{-d}^{d} e(a) da)^{-1} * trapz(profile(beta) e(beta)).
Reconstruction stationary_reconstruct(const PhaseSamples& samples, double delta0,
                                      int n_beta = 0);
Reconstruction stationary_reconstruct(const PhaseCoefficients& x, double delta0,
                                      int n_beta = 0, const SampleOptions& opts = {});

struct Theorem1Ratio {
  double ratio = 0.0;
  double integral_modulus = 0.0;
  double sup_measure = 0.0;
  bool quadrature_ok = true;
};

/// |I(P)| / sup_mu |Z_1(P, mu)|.
Theorem1Ratio theorem1_ratio(const PhaseCoefficients& x, double tol = 1e-8,
                             const SampleOptions& opts = {});

}  // namespace tarry
