#include "ifns/ifn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace ifns {

IFNormPair standard_pair(NormChoice nc) {
  IFNormPair p;
  p.tag = "standard(" + to_string(nc) + ")";
  p.norm_choice = nc;
  p.mu_radial = [](double r, double t) { return t > 0.0 ? t / (t + r) : 0.0; };
  p.nu_radial = [](double r, double t) { return t > 0.0 ? r / (t + r) : 1.0; };
  p.mu = [nc](const Vec& x, double t) { return t > 0.0 ? t / (t + norm(x, nc)) : 0.0; };
  p.nu = [nc](const Vec& x, double t) {
    if (t <= 0.0) return 1.0;
    double r = norm(x, nc);
    return r / (t + r);
  };
  return p;
}

MuNu evaluate(const IFNormPair& pair, const Vec& x, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("invalid parameter");
  if (!is_finite(x)) throw std::invalid_argument("invalid parameter");
  return {pair.mu(x, t), pair.nu(x, t)};
}

IFNormPair constant_mu_pair() {
  IFNormPair p = standard_pair(NormChoice::Euclidean);
  p.tag = "constant-mu";
  p.mu_radial = [](double, double t) { return t > 0.0 ? 1.0 : 0.0; };
  p.mu = [](const Vec&, double t) { return t > 0.0 ? 1.0 : 0.0; };
  return p;
}

IFNormPair scaled_nu_pair(NormChoice nc) {
  IFNormPair p = standard_pair(nc);
  p.tag = "scaled-nu(" + to_string(nc) + ")";
  p.nu_radial = [](double r, double t) { return t > 0.0 ? 2.0 * r / (t + r) : 1.0; };
  p.nu = [nc](const Vec& x, double t) {
    if (t <= 0.0) return 1.0;
    double r = norm(x, nc);
    return 2.0 * r / (t + r);
  };
  return p;
}

IFNormPair broken_triangle_pair(NormChoice nc) {
  IFNormPair p;
  p.tag = "broken-triangle(" + to_string(nc) + ")";
  p.norm_choice = nc;
  p.mu_radial = [](double r, double t) { return t > 0.0 ? t / (t + r * r) : 0.0; };
  p.nu_radial = [](double r, double t) { return t > 0.0 ? r * r / (t + r * r) : 1.0; };
  p.mu = [nc](const Vec& x, double t) {
    if (t <= 0.0) return 0.0;
    double r = norm(x, nc);
    return t / (t + r * r);
  };
  p.nu = [nc](const Vec& x, double t) {
    if (t <= 0.0) return 1.0;
    double r = norm(x, nc);
    return r * r / (t + r * r);
  };
  return p;
}

namespace {

std::string fmt_vec(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

struct Checker {
  AxiomCheck check;
  explicit Checker(std::string id, bool probed = false, bool derived = false) {
    check.id = std::move(id);
    check.probed = probed;
    check.derived = derived;
  }
  void fail(const std::string& witness) {
    check.pass = false;
    ++check.failures;
    if (check.witness.empty()) check.witness = witness;
  }
};

}  // namespace

AxiomReport check_axioms(const IFNormPair& pair, long sample_count, std::uint64_t seed, int dim) {
  if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  std::uniform_real_distribution<double> pos_t(1e-3, 10.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Checker a("a"), b("b"), c("c"), d("d"), e("e", true), f("f"), g("g"), h("h"), i_("i"),
      j("j", true), range("range"),
      mu_mono("mu-monotone-in-t", false, true), nu_mono("nu-monotone-in-t", false, true);

  const std::vector<double> iff_grid = {0.01, 1.0, 100.0};  // finite stand-in for "all t>0"
  const std::vector<double> up_probe = {1e3, 1e6, 1e9};
  const std::vector<double> down_probe = {1e-3, 1e-6, 1e-9};
  const double probe_tol = 1e-3;
  const Vec theta = zero(static_cast<std::size_t>(dim));

  auto sample_vec = [&](bool allow_theta) {
    if (allow_theta && unit(rng) < 1.0 / 16.0) return theta;
    Vec v(static_cast<std::size_t>(dim));
    for (auto& x : v) x = coord(rng);
    return v;
  };

  for (long it = 0; it < sample_count; ++it) {
    Vec x = sample_vec(true);
    Vec y = sample_vec(true);
    double t = pos_t(rng);
    double s = pos_t(rng);
    double cc = coord(rng);
    if (std::fabs(cc) < 0.1) cc = cc < 0 ? -0.1 : 0.1;  // keep c away from 0

    std::ostringstream w;
    w << "x=" << fmt_vec(x) << " y=" << fmt_vec(y) << " t=" << t << " s=" << s << " c=" << cc;
    const std::string witness = w.str();

    // (a)/(f): non-positive t.
    for (double tn : {0.0, -t}) {
      if (pair.mu(x, tn) != 0.0) a.fail(witness + " tneg=" + std::to_string(tn));
      if (pair.nu(x, tn) != 1.0) f.fail(witness + " tneg=" + std::to_string(tn));
    }

    // (b)/(g): the "for all t>0 iff x=theta" conditions on a finite grid.
    {
      bool mu_all_one = true, nu_all_zero = true;
      for (double tg : iff_grid) {
        if (pair.mu(x, tg) != 1.0) mu_all_one = false;
        if (pair.nu(x, tg) != 0.0) nu_all_zero = false;
      }
      bool is_theta = (x == theta);
      if (is_theta && !mu_all_one) b.fail(witness);
      if (!is_theta && mu_all_one) b.fail(witness);
      if (is_theta && !nu_all_zero) g.fail(witness);
      if (!is_theta && nu_all_zero) g.fail(witness);
    }

    // (c)/(h): scaling, exact up to 1-ulp noise.
    {
      Vec cx = scale(cc, x);
      double tc = t / std::fabs(cc);
      if (std::fabs(pair.mu(cx, t) - pair.mu(x, tc)) > 1e-12) c.fail(witness);
      if (std::fabs(pair.nu(cx, t) - pair.nu(x, tc)) > 1e-12) h.fail(witness);
    }

    // (d)/(i): min/max composition, exact inequalities.
    {
      Vec xy = add(x, y);
      if (pair.mu(xy, t + s) < std::min(pair.mu(x, t), pair.mu(y, s))) d.fail(witness);
      if (pair.nu(xy, t + s) > std::max(pair.nu(x, t), pair.nu(y, s))) i_.fail(witness);
    }

    // (e)/(j): limit probes; the t->0 side needs x bounded away from theta.
    {
      if (std::fabs(1.0 - pair.mu(x, up_probe.back())) > probe_tol) e.fail(witness);
      if (std::fabs(pair.nu(x, up_probe.back())) > probe_tol) j.fail(witness);
      double r = norm(x, pair.norm_choice);
      if (r >= 1e-2) {
        if (std::fabs(pair.mu(x, down_probe.back())) > probe_tol) e.fail(witness);
        if (std::fabs(1.0 - pair.nu(x, down_probe.back())) > probe_tol) j.fail(witness);
      }
    }

    // F-set range on positive and non-positive scales.
    for (double tr : {t, -t, up_probe[0], down_probe[0]}) {
      double mv = pair.mu(x, tr), nv = pair.nu(x, tr);
      if (!(mv >= 0.0 && mv <= 1.0) || !(nv >= 0.0 && nv <= 1.0))
        range.fail(witness + " tr=" + std::to_string(tr));
    }

    // Monotonicity in t, a consequence of (d)/(i) with y = theta.
    {
      double t1 = std::min(t, s), t2 = std::max(t, s);
      if (pair.mu(x, t1) > pair.mu(x, t2) + 1e-14) mu_mono.fail(witness);
      if (pair.nu(x, t1) + 1e-14 < pair.nu(x, t2)) nu_mono.fail(witness);
    }
  }

  AxiomReport report;
  report.dim = dim;
  report.samples = sample_count;
  report.seed = seed;
  for (auto* ck : {&a, &b, &c, &d, &e, &f, &g, &h, &i_, &j, &range, &mu_mono, &nu_mono})
    report.checks.push_back(ck->check);
  return report;
}

}  // namespace ifns
