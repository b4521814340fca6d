#include "levydd/levy_models.hpp"

#include <cmath>
#include <limits>

namespace levydd {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& msg) {
  if (!ok) throw SpecError(msg);
}
}  // namespace

// ---------------------------------------------------------------------------
// NegJumpSpec
// ---------------------------------------------------------------------------

NegJumpSpec NegJumpSpec::none() { return NegJumpSpec{}; }

NegJumpSpec NegJumpSpec::exponential(double eta_minus, double lambda_minus) {
  require(eta_minus > 0 && lambda_minus > 0,
          "exponential jump family needs eta_minus > 0, lambda_minus > 0");
  NegJumpSpec s;
  s.family = NegJumpFamily::exponential;
  s.rate = eta_minus;
  s.intensity = lambda_minus;
  return s;
}

NegJumpSpec NegJumpSpec::stable_tail(double alpha) {
  require(alpha > 1.0 && alpha < 2.0, "stable index must lie in (1,2)");
  NegJumpSpec s;
  s.family = NegJumpFamily::stable_tail;
  s.alpha = alpha;
  return s;
}

NegJumpSpec NegJumpSpec::gamma_tail(double beta, double alpha_g) {
  require(beta > 0 && alpha_g > 0, "gamma jump family needs beta > 0, alpha_g > 0");
  NegJumpSpec s;
  s.family = NegJumpFamily::gamma_tail;
  s.shape = beta;
  s.rate = alpha_g;
  return s;
}

double NegJumpSpec::total_mass() const {
  switch (family) {
    case NegJumpFamily::none:
      return 0.0;
    case NegJumpFamily::exponential:
      return intensity;
    case NegJumpFamily::stable_tail:
    case NegJumpFamily::gamma_tail:
      return kInf;
  }
  return 0.0;
}

double NegJumpSpec::small_jump_mean() const {
  switch (family) {
    case NegJumpFamily::none:
      return 0.0;
    case NegJumpFamily::exponential:
      // lambda * eta * int_0^1 u e^{-eta u} du
      return intensity * (1.0 - std::exp(-rate) * (1.0 + rate)) / rate;
    case NegJumpFamily::stable_tail:
      return kInf;
    case NegJumpFamily::gamma_tail:
      return shape * (1.0 - std::exp(-rate)) / rate;
  }
  return 0.0;
}

double NegJumpSpec::density(double y) const {
  if (y <= 0) throw SpecError("jump density defined for y > 0 only");
  switch (family) {
    case NegJumpFamily::none:
      return 0.0;
    case NegJumpFamily::exponential:
      return intensity * rate * std::exp(-rate * y);
    case NegJumpFamily::stable_tail: {
      const double c = alpha * (alpha - 1.0) / std::tgamma(2.0 - alpha);
      return c * std::pow(y, -1.0 - alpha);
    }
    case NegJumpFamily::gamma_tail:
      return shape * std::exp(-rate * y) / y;
  }
  return 0.0;
}

double NegJumpSpec::tail(double y) const {
  if (y <= 0) throw SpecError("jump tail defined for y > 0 only");
  switch (family) {
    case NegJumpFamily::none:
      return 0.0;
    case NegJumpFamily::exponential:
      return intensity * std::exp(-rate * y);
    case NegJumpFamily::stable_tail: {
      const double c = alpha * (alpha - 1.0) / std::tgamma(2.0 - alpha);
      return c / alpha * std::pow(y, -alpha);
    }
    case NegJumpFamily::gamma_tail:
      // beta * E1(alpha_g y)
      return shape * -std::expint(-rate * y);
  }
  return 0.0;
}

Complex NegJumpSpec::exponent_term(Complex s) const {
  switch (family) {
    case NegJumpFamily::none:
      return 0.0;
    case NegJumpFamily::exponential:
      return intensity * (rate / (rate + s) - 1.0) + s * small_jump_mean();
    case NegJumpFamily::stable_tail:
      return std::pow(s, alpha) - s * (alpha / std::tgamma(2.0 - alpha));
    case NegJumpFamily::gamma_tail:
      return -shape * std::log(1.0 + s / rate) + s * small_jump_mean();
  }
  return 0.0;
}

Complex NegJumpSpec::exponent_term_prime(Complex s) const {
  switch (family) {
    case NegJumpFamily::none:
      return 0.0;
    case NegJumpFamily::exponential: {
      const Complex den = rate + s;
      return -intensity * rate / (den * den) + small_jump_mean();
    }
    case NegJumpFamily::stable_tail:
      return alpha * std::pow(s, alpha - 1.0) - alpha / std::tgamma(2.0 - alpha);
    case NegJumpFamily::gamma_tail:
      return -shape / (rate + s) + small_jump_mean();
  }
  return 0.0;
}

double NegJumpSpec::sampler_linear_term() const {
  switch (family) {
    case NegJumpFamily::none:
      return 0.0;
    case NegJumpFamily::exponential:
    case NegJumpFamily::gamma_tail:
      return small_jump_mean();
    case NegJumpFamily::stable_tail:
      return -alpha / std::tgamma(2.0 - alpha);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// PosJumpSpec
// ---------------------------------------------------------------------------

PosJumpSpec PosJumpSpec::exponential(double eta_plus, double lambda_plus) {
  require(eta_plus > 0 && lambda_plus > 0,
          "positive jumps need eta_plus > 0, lambda_plus > 0");
  PosJumpSpec s;
  s.lambda = lambda_plus;
  s.family = PosJumpFamily::exponential;
  s.rate = eta_plus;
  return s;
}

PosJumpSpec PosJumpSpec::point_masses(std::vector<std::pair<double, double>> pts,
                                      double lambda_plus) {
  require(lambda_plus > 0, "positive jumps need lambda_plus > 0");
  require(!pts.empty(), "point-mass jump distribution needs at least one atom");
  double total = 0;
  for (const auto& [x, p] : pts) {
    require(x > 0, "positive jump sizes must be > 0");
    require(p > 0, "point-mass probabilities must be > 0");
    total += p;
  }
  require(std::abs(total - 1.0) < 1e-12, "point-mass probabilities must sum to 1");
  PosJumpSpec s;
  s.lambda = lambda_plus;
  s.family = PosJumpFamily::point_masses;
  s.points = std::move(pts);
  return s;
}

double PosJumpSpec::mean_jump() const {
  if (family == PosJumpFamily::exponential) return 1.0 / rate;
  double m = 0;
  for (const auto& [x, p] : points) m += x * p;
  return m;
}

Complex PosJumpSpec::mgf(Complex s) const {
  if (family == PosJumpFamily::exponential) {
    return rate / (rate - s);
  }
  Complex m = 0;
  for (const auto& [x, p] : points) m += p * std::exp(s * x);
  return m;
}

Complex PosJumpSpec::mgf_prime(Complex s) const {
  if (family == PosJumpFamily::exponential) {
    const Complex den = rate - s;
    return rate / (den * den);
  }
  Complex m = 0;
  for (const auto& [x, p] : points) m += p * x * std::exp(s * x);
  return m;
}

// ---------------------------------------------------------------------------
// LevyModelSpec
// ---------------------------------------------------------------------------

LevyModelSpec LevyModelSpec::make(double sigma, double mu, NegJumpSpec neg,
                                  std::optional<PosJumpSpec> pos) {
  require(sigma >= 0, "gaussian_sigma must be >= 0");
  LevyModelSpec m;
  m.gaussian_sigma = sigma;
  m.center_mu = mu;
  m.neg_jump = neg;
  m.pos_jump = std::move(pos);

  if (sigma == 0.0) {
    require(m.neg_jump.family != NegJumpFamily::none,
            "sigma = 0 with no negative jumps makes |X| a subordinator");
    const double msj = m.neg_jump.small_jump_mean();
    if (std::isfinite(msj)) {
      const double d = -mu + msj;
      require(d > 0,
              "bounded-variation part must have positive drift "
              "(|X| must not be a subordinator)");
    }
  }
  return m;
}

LevyModelSpec LevyModelSpec::sn_part() const {
  LevyModelSpec m = *this;
  m.pos_jump.reset();
  return m;
}

double LevyModelSpec::sn_mean() const { return psi_prime(sn_part(), 0.0); }

// ---------------------------------------------------------------------------
// Exponents
// ---------------------------------------------------------------------------

Complex psi(const LevyModelSpec& model, Complex s) {
  if (model.pos_jump)
    throw SpecError("psi is defined for the spectrally negative part only");
  if (s.real() < 0) throw SpecError("psi requires Re(s) >= 0");
  return -model.center_mu * s + 0.5 * model.gaussian_sigma * model.gaussian_sigma * s * s +
         model.neg_jump.exponent_term(s);
}

double psi(const LevyModelSpec& model, double s) { return psi(model, Complex(s)).real(); }

Complex psi_prime(const LevyModelSpec& model, Complex s) {
  if (model.pos_jump)
    throw SpecError("psi_prime is defined for the spectrally negative part only");
  if (s.real() < 0) throw SpecError("psi_prime requires Re(s) >= 0");
  return -model.center_mu + model.gaussian_sigma * model.gaussian_sigma * s +
         model.neg_jump.exponent_term_prime(s);
}

double psi_prime(const LevyModelSpec& model, double s) {
  return psi_prime(model, Complex(s)).real();
}

Complex char_exponent(const LevyModelSpec& model, double s) {
  const Complex is(0.0, s);
  Complex v = -psi(model.sn_part(), is);
  if (model.pos_jump) {
    v += model.pos_jump->lambda * (1.0 - model.pos_jump->mgf(is));
  }
  return v;
}

namespace detail {

Complex psi_with_positive_jumps(const LevyModelSpec& model, Complex s) {
  Complex v = psi(model.sn_part(), s);
  if (model.pos_jump) v += model.pos_jump->lambda * (model.pos_jump->mgf(s) - 1.0);
  return v;
}

double largest_psi_root(const std::function<double(double)>& psi_fn,
                        const std::function<double(double)>& dpsi_fn, double q) {
  if (q < 0) throw SpecError("phi requires q >= 0");

  // Find Phi(0): zero when psi'(0+) >= 0, else the positive root of psi = 0.
  auto refine = [&](double lo, double hi, double target) {
    // psi(lo) - target <= 0 < psi(hi) - target; bisection then Newton polish.
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (psi_fn(mid) - target > 0)
        hi = mid;
      else
        lo = mid;
      if (hi - lo < 1e-15 * (1.0 + hi)) break;
    }
    double x = 0.5 * (lo + hi);
    const double scale = std::max(1.0, std::abs(target));
    for (int i = 0; i < 60; ++i) {
      const double f = psi_fn(x) - target;
      if (std::abs(f) <= 1e-13 * scale) break;
      const double dp = dpsi_fn(x);
      if (dp <= 0) break;
      double step = f / dp;
      double xn = x - step;
      if (xn <= lo || xn >= hi) xn = 0.5 * (lo + hi);
      x = xn;
      if (psi_fn(x) - target > 0)
        hi = x;
      else
        lo = x;
    }
    return x;
  };

  double phi0 = 0.0;
  if (dpsi_fn(1e-12) < 0) {
    double step = 1e-6, hi = step;
    int guard = 0;
    while (psi_fn(hi) <= 0) {
      step *= 2;
      hi += step;
      if (++guard > 400)
        throw NumericsError("phi bracketing failed for q = 0 (psi stays <= 0 up to " +
                            std::to_string(hi) + ")");
    }
    phi0 = refine(hi - step, hi, 0.0);
  }
  if (q == 0.0) return phi0;

  double step = std::max(phi0, 1e-3);
  double hi = phi0 + step;
  int guard = 0;
  while (psi_fn(hi) <= q) {
    step *= 2;
    hi += step;
    if (++guard > 400)
      throw NumericsError("phi bracketing failed (psi <= q up to s = " +
                          std::to_string(hi) + ", q = " + std::to_string(q) + ")");
  }
  return refine(hi - step, hi, q);
}

}  // namespace detail

double phi(const LevyModelSpec& model, double q) {
  const LevyModelSpec sn = model.sn_part();
  return detail::largest_psi_root([&](double s) { return psi(sn, s); },
                                  [&](double s) { return psi_prime(sn, s); }, q);
}

VariationClass classify_variation(const LevyModelSpec& model) {
  VariationClass vc;
  const double msj = model.neg_jump.small_jump_mean();
  if (model.gaussian_sigma == 0.0 && std::isfinite(msj)) {
    vc.kind = PathVariation::bounded;
    vc.drift = -model.center_mu + msj;
  } else {
    vc.kind = PathVariation::unbounded;
  }
  return vc;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

LevyModelSpec brownian_preset(double mu_drift, double sigma) {
  require(sigma > 0, "brownian preset needs sigma > 0");
  return LevyModelSpec::make(sigma, -mu_drift, NegJumpSpec::none());
}

LevyModelSpec stable_preset(double alpha) {
  // center chosen so the linear terms cancel and psi(s) = s^alpha exactly
  const double mu = -alpha / std::tgamma(2.0 - alpha);
  return LevyModelSpec::make(0.0, mu, NegJumpSpec::stable_tail(alpha));
}

LevyModelSpec sn_gamma_preset(double d, double alpha_g, double beta) {
  require(d > 0, "gamma preset needs drift d > 0");
  NegJumpSpec neg = NegJumpSpec::gamma_tail(beta, alpha_g);
  const double mu = neg.small_jump_mean() - d;
  return LevyModelSpec::make(0.0, mu, neg);
}

LevyModelSpec kou_preset(const KouParams& p) {
  require(p.sigma > 0, "kou preset needs sigma > 0");
  NegJumpSpec neg = NegJumpSpec::exponential(p.eta_minus, p.lambda_minus);
  const double mu = neg.small_jump_mean() - p.mu;
  return LevyModelSpec::make(p.sigma, mu, neg,
                             PosJumpSpec::exponential(p.eta_plus, p.lambda_plus));
}

}  // namespace levydd
