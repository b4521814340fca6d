#include "levydd/ladder.hpp"

#include <cmath>
#include <limits>

namespace levydd {

namespace {

enum class LadderKind { sn_brownian, sn_stable, sn_generic, kou };

struct KouView {
  double sigma, mu, lm, em, lp, ep;  // psi = s^2 sigma^2/2 + mu s + jump terms
};

bool detect_kou(const LevyModelSpec& m, KouView& out) {
  if (!m.pos_jump || m.pos_jump->family != PosJumpFamily::exponential) return false;
  if (m.neg_jump.family != NegJumpFamily::exponential) return false;
  if (!(m.gaussian_sigma > 0)) return false;
  out.sigma = m.gaussian_sigma;
  out.mu = m.neg_jump.small_jump_mean() - m.center_mu;
  out.lm = m.neg_jump.intensity;
  out.em = m.neg_jump.rate;
  out.lp = m.pos_jump->lambda;
  out.ep = m.pos_jump->rate;
  return true;
}

}  // namespace

struct LadderData::Impl {
  LadderKind kind = LadderKind::sn_generic;
  LevyModelSpec model;
  KouView kou{};
  InversionConfig cfg;
  double kappa00 = 0.0;
  double phi0 = 0.0;  // SN: Phi(0)
  double d_l = 0.0;
  double d_l_raw = 0.0;
  double d_h = 1.0;

  // --- full exponent (two-sided allowed) and derivative ---
  Complex full_psi(Complex s) const { return detail::psi_with_positive_jumps(model, s); }
  Complex full_psi_prime(Complex s) const {
    Complex v = psi_prime(model.sn_part(), s);
    if (model.pos_jump) v += model.pos_jump->lambda * model.pos_jump->mgf_prime(s);
    return v;
  }

  // --- spectrally negative Phi(alpha) on the right half-plane ---
  Complex phi_complex(Complex alpha) const {
    if (kind == LadderKind::sn_brownian) {
      const double mu = -model.center_mu, s2 = model.gaussian_sigma * model.gaussian_sigma;
      return (-mu + std::sqrt(Complex(mu * mu) + 2.0 * s2 * alpha)) / s2;
    }
    if (kind == LadderKind::sn_stable) {
      return std::pow(alpha, 1.0 / model.neg_jump.alpha);
    }
    // generic: Newton continuation from the real axis
    const double are = std::max(alpha.real(), 1e-12);
    double start = phi(model, are);
    Complex root(start, 0.0);
    const int steps =
        std::min(200, 8 + int(4.0 * std::abs(alpha.imag()) / (1.0 + are)));
    const LevyModelSpec sn = model.sn_part();
    for (int j = 1; j <= steps; ++j) {
      const Complex target(are, alpha.imag() * double(j) / steps);
      for (int it = 0; it < 30; ++it) {
        const Complex f = psi(sn, root) - target;
        if (std::abs(f) <= 1e-13 * (1.0 + std::abs(target))) break;
        Complex step = f / psi_prime(sn, root);
        // keep the iterate inside the exponent's analyticity domain
        while (root.real() - step.real() <= -0.5 * domain_floor() && std::abs(step) > 0)
          step *= 0.5;
        root -= step;
      }
    }
    if (std::abs(psi(sn, root) - alpha) > 1e-9 * (1.0 + std::abs(alpha)))
      throw NumericsError("Phi(alpha) continuation failed to converge");
    return root;
  }

  double domain_floor() const {
    switch (model.neg_jump.family) {
      case NegJumpFamily::exponential:
      case NegJumpFamily::gamma_tail:
        return model.neg_jump.rate;
      default:
        return 0.0;  // stable / none: keep Re(root) > 0
    }
  }

  // --- Kou ascending roots (Re > 0) of psi(s) = alpha, tracked from real axis ---
  std::pair<double, double> kou_roots_real(double alpha) const {
    auto f = [&](double s) { return full_psi(Complex(s)).real() - alpha; };
    auto bisect = [&](double lo, double hi) {
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0 ? hi : lo) = mid;
      }
      return 0.5 * (lo + hi);
    };
    // rho1 in [0, eta_plus): psi(0) = 0 <= alpha and psi -> +inf at the pole
    double rho1 = 0.0;
    const double ep = kou.ep;
    if (alpha > 0) {
      rho1 = bisect(0.0, ep * (1.0 - 1e-13));
    } else {
      // alpha = 0: zero unless the mean is negative, then the positive root
      const double mean = full_psi_prime(Complex(0.0)).real();
      if (mean < 0) {
        double lo = 1e-12;
        if (f(lo) < 0) rho1 = bisect(lo, ep * (1.0 - 1e-13));
      }
    }
    // rho2 in (eta_plus, inf): psi -> -inf right of the pole, then +inf
    const double asym =
        (-kou.mu + std::sqrt(kou.mu * kou.mu + 2.0 * kou.sigma * kou.sigma *
                                                   std::max(alpha, 1.0))) /
        (kou.sigma * kou.sigma);
    double lo = ep * (1.0 + 1e-13);
    double step = std::max({1.0, ep, asym});
    double hi = lo + step;
    int guard = 0;
    while (f(hi) <= 0) {
      step *= 2;
      hi += step;
      if (++guard > 400) throw NumericsError("Kou root bracketing failed");
    }
    const double rho2 = bisect(std::max(lo, hi - step), hi);
    return {rho1, rho2};
  }

  // Exponent split psi(s) = R(s) + lp*ep/(ep - s); the pole-pinned root rho1 is
  // solved in the well-conditioned gap variable g = ep - rho1.
  Complex psi_rest(Complex s) const {
    return 0.5 * kou.sigma * kou.sigma * s * s + kou.mu * s +
           kou.lm * (kou.em / (kou.em + s) - 1.0) - kou.lp;
  }
  Complex psi_rest_prime(Complex s) const {
    const Complex den = kou.em + s;
    return kou.sigma * kou.sigma * s + kou.mu - kou.lm * kou.em / (den * den);
  }

  Complex gap_residual(Complex g, Complex alpha) const {
    return kou.lp * kou.ep / g + psi_rest(kou.ep - g) - alpha;
  }

  Complex gap_newton(Complex g, Complex alpha) const {
    for (int it = 0; it < 60; ++it) {
      const Complex fv = gap_residual(g, alpha);
      if (std::abs(fv) <= 1e-12 * (1.0 + std::abs(alpha))) break;
      const Complex dv =
          -kou.lp * kou.ep / (g * g) - psi_rest_prime(kou.ep - g);
      Complex step = fv / dv;
      if (std::abs(step) > 0.5 * std::abs(g)) step *= 0.5 * std::abs(g) / std::abs(step);
      g -= step;
    }
    return g;
  }

  Complex polish(Complex root, Complex target) const {
    for (int it = 0; it < 60; ++it) {
      const Complex fv = full_psi(root) - target;
      if (std::abs(fv) <= 1e-13 * (1.0 + std::abs(target))) break;
      root -= fv / full_psi_prime(root);
    }
    return root;
  }

  std::pair<Complex, Complex> kou_roots_complex(Complex alpha) const {
    Complex gap, rho2;
    const double s2 = kou.sigma * kou.sigma, ep = kou.ep;
    if (std::abs(alpha) >= 1e4) {
      // asymptotic starts: rho2 from the quadratic part, rho1 pinned at the pole
      rho2 = (-kou.mu + std::sqrt(Complex(kou.mu * kou.mu) + 2.0 * s2 * alpha)) / s2;
      gap = gap_newton(kou.lp * ep / (alpha - psi_rest(Complex(ep))), alpha);
      rho2 = polish(rho2, alpha);
    } else {
      // continuation from the real axis
      const double are = std::max(alpha.real(), 1e-12);
      auto [r1, r2] = kou_roots_real(are);
      gap = Complex(ep - r1, 0.0);
      rho2 = Complex(r2, 0.0);
      const int steps =
          std::min(1000, 8 + int(8.0 * std::abs(alpha.imag()) / (1.0 + are)));
      for (int j = 1; j <= steps; ++j) {
        const Complex target(are, alpha.imag() * double(j) / steps);
        gap = gap_newton(gap, target);
        rho2 = polish(rho2, target);
      }
    }
    const Complex rho1 = ep - gap;
    const double tol = 1e-8 * (1.0 + std::abs(alpha));
    if (std::abs(gap_residual(gap, alpha)) > tol ||
        std::abs(full_psi(rho2) - alpha) > tol || rho1.real() < -1e-10 ||
        rho2.real() < -1e-10 || std::abs(rho1 - rho2) < 1e-10 * (1.0 + std::abs(rho2)))
      throw NumericsError("Kou ascending-root tracking failed");
    return {rho1, rho2};
  }

  Complex kappa_time_impl(Complex alpha) const {
    if (kind == LadderKind::kou) {
      auto [r1, r2] = kou_roots_complex(alpha);
      return r1 * r2 / kou.ep;
    }
    return phi_complex(alpha);
  }
};

LadderData::LadderData() = default;
LadderData::~LadderData() = default;
LadderData::LadderData(LadderData&&) noexcept = default;
LadderData::LadderData(const LadderData& o) : impl_(std::make_unique<Impl>(*o.impl_)) {}

LadderData LadderData::build(const LevyModelSpec& model, InversionConfig cfg) {
  cfg.validate();
  LadderData ld;
  ld.impl_ = std::make_unique<Impl>();
  Impl& im = *ld.impl_;
  im.model = model;
  im.cfg = cfg;

  KouView kv{};
  if (detect_kou(model, kv)) {
    im.kind = LadderKind::kou;
    im.kou = kv;
    auto [r1, r2] = im.kou_roots_real(0.0);
    im.kappa00 = r1 * r2 / kv.ep;
    // beta-derivative of kappa at large beta
    const double B = 1e8;
    im.d_h = ld.kappa(1.0, B) - ld.kappa(1.0, B - 1.0);
  } else if (model.spectrally_negative()) {
    if (model.neg_jump.family == NegJumpFamily::none && model.gaussian_sigma > 0)
      im.kind = LadderKind::sn_brownian;
    else if (model.gaussian_sigma == 0.0 &&
             model.neg_jump.family == NegJumpFamily::stable_tail &&
             std::abs(-model.center_mu -
                      model.neg_jump.alpha / std::tgamma(2.0 - model.neg_jump.alpha)) <
                 1e-12 * (1.0 + std::abs(model.center_mu)))
      im.kind = LadderKind::sn_stable;
    else
      im.kind = LadderKind::sn_generic;
    im.phi0 = phi(model, 0.0);
    im.kappa00 = im.phi0;
    im.d_h = 1.0;  // H_t = t for the running-maximum local time
  } else {
    throw SpecError(
        "ladder data is available for spectrally negative models and the Kou "
        "model only");
  }

  // d_L = lim (kappa(alpha,0) - kappa00)/alpha along alpha = 10^k, extrapolated
  std::vector<double> seq;
  for (int k = 2; k <= 6; ++k) {
    const double a = std::pow(10.0, k);
    seq.push_back((ld.kappa(a, 0.0) - im.kappa00) / a);
  }
  // two Aitken passes knock out the leading power-law terms
  auto aitken = [](std::vector<double> s) {
    for (int pass = 0; pass < 2 && s.size() >= 3; ++pass) {
      std::vector<double> n;
      for (size_t i = 0; i + 2 < s.size(); ++i) {
        const double d1 = s[i + 1] - s[i], d2 = s[i + 2] - s[i + 1];
        const double den = d2 - d1;
        n.push_back(std::abs(den) < 1e-300 ? s[i + 2] : s[i + 2] - d2 * d2 / den);
      }
      s = n;
    }
    return s.back();
  };
  im.d_l_raw = aitken(seq);
  const double scale = std::max(1.0, std::abs(ld.kappa(1.0, 0.0) - im.kappa00));
  im.d_l = std::abs(im.d_l_raw) < 1e-5 * scale ? 0.0 : im.d_l_raw;
  return ld;
}

double LadderData::kappa(double alpha, double beta) const {
  if (alpha < 0 || beta < 0) throw SpecError("kappa requires alpha, beta >= 0");
  const Impl& im = *impl_;
  if (im.kind == LadderKind::kou) {
    auto [r1, r2] = im.kou_roots_real(alpha);
    return (beta + r1) * (beta + r2) / (beta + im.kou.ep);
  }
  return im.phi_complex(Complex(alpha)).real() + beta;
}

Complex LadderData::kappa_time(Complex alpha) const {
  if (alpha.real() <= 0) throw SpecError("kappa_time requires Re(alpha) > 0");
  return impl_->kappa_time_impl(alpha);
}

double LadderData::kappa00() const { return impl_->kappa00; }
double LadderData::drift_dL() const { return impl_->d_l; }
double LadderData::drift_dL_raw() const { return impl_->d_l_raw; }
double LadderData::drift_dH() const { return impl_->d_h; }
bool LadderData::is_kou() const { return impl_->kind == LadderKind::kou; }

std::pair<double, double> LadderData::kou_roots(double alpha) const {
  if (!is_kou()) throw SpecError("kou_roots is only available for the Kou model");
  return impl_->kou_roots_real(alpha);
}

double LadderData::nu_bar(double t) const {
  if (!(t > 0)) throw SpecError("nu_bar requires t > 0");
  // the inversion contour scales like 1/t; keep it representable
  // (nu_bar is nonincreasing, so this floors extreme quadrature probes safely)
  t = std::max(t, 1e-290);
  const Impl& im = *impl_;
  const double k00 = im.kappa00, dl = im.d_l;
  auto f_hat = [&im, k00, dl](Complex a) {
    return (im.kappa_time_impl(a) - k00) / a - dl;
  };
  const double v = laplace_invert(f_hat, t, im.cfg, 0.0);
  return std::max(v, 0.0);
}

double LadderData::excursion_tail(double t) const { return nu_bar(t) + impl_->kappa00; }

}  // namespace levydd
