#pragma once
// Lévy model specifications: Laplace / characteristic exponents, path
// variation classification, and the standard presets used across the library.
//
// Sign convention: psi(s) = (1/t) log E[exp(s X_t)]
//                         = -mu*s + sigma^2 s^2 / 2 + integral terms,
// with the jump measure of the spectrally negative part supported on (-inf,0).

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace levydd {

using Complex = std::complex<double>;

// Invalid model or argument (precondition violations).
class SpecError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Numerical scheme failed to converge within its budget.
class NumericsError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Negative jump measure families (atomless, closed-form exponent integrals)
// ---------------------------------------------------------------------------

enum class NegJumpFamily { none, exponential, stable_tail, gamma_tail };

struct NegJumpSpec {
  NegJumpFamily family = NegJumpFamily::none;
  double rate = 0.0;       // exponential: eta_minus; gamma_tail: alpha_g
  double intensity = 0.0;  // exponential: lambda_minus
  double alpha = 0.0;      // stable_tail: index in (1,2)
  double shape = 0.0;      // gamma_tail: beta

  static NegJumpSpec none();
  static NegJumpSpec exponential(double eta_minus, double lambda_minus);
  static NegJumpSpec stable_tail(double alpha);
  static NegJumpSpec gamma_tail(double beta, double alpha_g);

  // Total mass Pi((-inf,0)); +inf for the infinite-activity families.
  double total_mass() const;
  // Integral of |x| over (-1,0) against Pi; +inf for stable_tail.
  double small_jump_mean() const;
  // Density of the pushed-forward measure Pi(-dy) at y > 0.
  double density(double y) const;
  // Tail Pi((-inf,-y)) for y > 0.
  double tail(double y) const;

  // integral of (e^{sx} - 1 - s x 1_{x > -1}) Pi(dx), Re(s) >= 0.
  Complex exponent_term(Complex s) const;
  Complex exponent_term_prime(Complex s) const;

  // Coefficient of s left over once the jump transform proper is split off;
  // the exact-increment sampler folds this into the drift.
  double sampler_linear_term() const;
};

// ---------------------------------------------------------------------------
// Positive compound Poisson component
// ---------------------------------------------------------------------------

enum class PosJumpFamily { exponential, point_masses };

struct PosJumpSpec {
  double lambda = 0.0;  // arrival rate, = Pi((0,inf))
  PosJumpFamily family = PosJumpFamily::exponential;
  double rate = 0.0;                                // exponential: eta_plus
  std::vector<std::pair<double, double>> points;    // (size, prob), probs sum to 1

  static PosJumpSpec exponential(double eta_plus, double lambda_plus);
  static PosJumpSpec point_masses(std::vector<std::pair<double, double>> pts,
                                  double lambda_plus);

  double mean_jump() const;
  // E[e^{s J}] for a single jump; exponential family requires Re(s) < rate.
  Complex mgf(Complex s) const;
  Complex mgf_prime(Complex s) const;
};

// ---------------------------------------------------------------------------
// Model spec and variation classification
// ---------------------------------------------------------------------------

enum class PathVariation { bounded, unbounded };

struct VariationClass {
  PathVariation kind = PathVariation::unbounded;
  double drift = 0.0;  // d = -mu + int_{(-1,0)} |x| Pi(dx); valid when bounded
};

struct LevyModelSpec {
  double gaussian_sigma = 0.0;
  double center_mu = 0.0;  // mu in the psi convention above
  NegJumpSpec neg_jump;
  std::optional<PosJumpSpec> pos_jump;

  // Validates invariants (no subordinator, parameter ranges); throws SpecError.
  static LevyModelSpec make(double sigma, double mu, NegJumpSpec neg,
                            std::optional<PosJumpSpec> pos = std::nullopt);

  bool spectrally_negative() const { return !pos_jump.has_value(); }
  LevyModelSpec sn_part() const;
  // E[X_1] of the spectrally negative part, i.e. psi'(0+).
  double sn_mean() const;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Laplace exponent of a spectrally negative model, Re(s) >= 0.
Complex psi(const LevyModelSpec& model, Complex s);
double psi(const LevyModelSpec& model, double s);
Complex psi_prime(const LevyModelSpec& model, Complex s);
double psi_prime(const LevyModelSpec& model, double s);

// Largest root of psi(s) = q, q >= 0. psi(phi(q)) = q to 1e-12 relative.
double phi(const LevyModelSpec& model, double q);

// Characteristic exponent Psi(s) = -(1/t) log E[e^{i s X_t}]; two-sided models allowed.
Complex char_exponent(const LevyModelSpec& model, double s);

VariationClass classify_variation(const LevyModelSpec& model);

namespace detail {
// Full two-sided Laplace exponent (used by the Kou ladder machinery);
// defined for Re(s) inside the strip where the positive-jump mgf converges.
Complex psi_with_positive_jumps(const LevyModelSpec& model, Complex s);

// Largest real root of a convex Laplace exponent given as functors.
// psi must satisfy psi(0) = 0 and grow to +inf.
double largest_psi_root(const std::function<double(double)>& psi_fn,
                        const std::function<double(double)>& dpsi_fn, double q);
}  // namespace detail

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

// X_t = mu t + sigma W_t; psi(s) = mu s + sigma^2 s^2 / 2.
LevyModelSpec brownian_preset(double mu_drift, double sigma);
// Spectrally negative alpha-stable, psi(s) = s^alpha, alpha in (1,2).
LevyModelSpec stable_preset(double alpha);
// Spectrally negative gamma process, psi(s) = s d - beta log(1 + s/alpha_g).
LevyModelSpec sn_gamma_preset(double d, double alpha_g, double beta);

struct KouParams {
  double mu = 0.0;
  double sigma = 0.0;
  double lambda_minus = 0.0;
  double eta_minus = 0.0;
  double lambda_plus = 0.0;
  double eta_plus = 0.0;
};
// Kou jump diffusion:
// psi(s) = sigma^2 s^2/2 + mu s + lambda_-(eta_-/(eta_- + s) - 1)
//        + lambda_+(eta_+/(eta_+ - s) - 1).
LevyModelSpec kou_preset(const KouParams& p);

}  // namespace levydd
