#include "rcl/renewal_law.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rcl/series.hpp"

namespace rcl {
namespace {

// Above this horizon the O(H^2) recursion gives way to Newton inversion.
constexpr std::int64_t kExactRecursionCutoff = 32768;

void check_pmf(std::span<const double> f) {
  double sum = 0.0;
  for (std::size_t n = 1; n < f.size(); ++n) {
    if (f[n] < 0.0)
      throw InvalidPmf("f[" + std::to_string(n) + "] = " + std::to_string(f[n]) +
                       " is negative");
    sum += f[n];
  }
  if (!f.empty() && f[0] != 0.0) throw InvalidPmf("f[0] must be 0");
  if (sum > 1.0 + 1e-12)
    throw InvalidPmf("inter-arrival mass " + std::to_string(sum) + " exceeds 1");
}

std::vector<double> u_from_f_exact(std::span<const double> f,
                                   std::int64_t horizon) {
  std::vector<double> u(static_cast<std::size_t>(horizon) + 1, 0.0);
  u[0] = 1.0;
  const std::int64_t fmax = static_cast<std::int64_t>(f.size()) - 1;
  for (std::int64_t n = 1; n <= horizon; ++n) {
    double acc = 0.0;
    const std::int64_t kmax = std::min(n, fmax);
    const double* fp = f.data();
    const double* up = u.data() + n;
    for (std::int64_t k = 1; k <= kmax; ++k) acc += fp[k] * up[-k];
    u[static_cast<std::size_t>(n)] = acc;
  }
  return u;
}

std::vector<double> one_minus(std::span<const double> f, std::size_t len) {
  std::vector<double> g(len, 0.0);
  g[0] = 1.0;
  for (std::size_t n = 1; n < std::min(len, f.size()); ++n) g[n] = -f[n];
  return g;
}

std::string format_param(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

double RenewalLaw::inter_arrival_mass() const {
  return std::accumulate(f.begin() + 1, f.end(), 0.0);
}

double RenewalLaw::max_u() const {
  if (u.size() < 2) return 0.0;
  return *std::max_element(u.begin() + 1, u.end());
}

std::vector<double> u_from_f(std::span<const double> f, std::int64_t horizon) {
  if (horizon < 0) throw Error("horizon must be nonnegative");
  check_pmf(f);
  if (horizon <= kExactRecursionCutoff) return u_from_f_exact(f, horizon);
  // U = 1 / (1 - F)
  const std::size_t len = static_cast<std::size_t>(horizon) + 1;
  std::vector<double> u = series::inverse(one_minus(f, len), len);
  u[0] = 1.0;
  for (std::size_t n = 1; n < len; ++n) {
    if (u[n] < 0.0) u[n] = u[n] > -1e-10 ? 0.0 : u[n];
    if (u[n] < 0.0)
      throw Error("u_from_f: negative renewal probability at n=" +
                  std::to_string(n));
    if (u[n] > 1.0) u[n] = std::min(u[n], 1.0);
  }
  return u;
}

std::vector<double> f_from_u(std::span<const double> u, double tol) {
  if (u.empty() || u[0] != 1.0)
    throw Error("f_from_u: u[0] must be exactly 1");
  for (std::size_t n = 1; n < u.size(); ++n)
    if (u[n] < 0.0 || u[n] > 1.0)
      throw Error("f_from_u: u[" + std::to_string(n) + "] outside [0,1]");

  const std::int64_t horizon = static_cast<std::int64_t>(u.size()) - 1;
  std::vector<double> f(u.size(), 0.0);
  if (horizon <= kExactRecursionCutoff) {
    for (std::int64_t n = 1; n <= horizon; ++n) {
      double acc = u[static_cast<std::size_t>(n)];
      const double* fp = f.data();
      const double* up = u.data() + n;
      for (std::int64_t k = 1; k < n; ++k) acc -= fp[k] * up[-k];
      if (acc < -tol) throw NotARenewalSequence(n, acc);
      f[static_cast<std::size_t>(n)] = std::max(acc, 0.0);
    }
    return f;
  }
  // F = 1 - 1/U
  std::vector<double> v = series::inverse(u, u.size());
  for (std::size_t n = 1; n < u.size(); ++n) {
    const double fn = -v[n];
    if (fn < -tol) throw NotARenewalSequence(static_cast<std::int64_t>(n), fn);
    f[n] = std::max(fn, 0.0);
  }
  return f;
}

RenewalLaw make_law_from_f(std::string label, std::vector<double> f,
                           std::int64_t horizon, TailModel tail) {
  f.resize(static_cast<std::size_t>(horizon) + 1, 0.0);
  RenewalLaw law;
  law.label = std::move(label);
  law.horizon = horizon;
  law.u = u_from_f(f, horizon);
  law.f = std::move(f);
  law.tail = tail;
  return law;
}

RenewalLaw make_law_from_u(std::string label, std::vector<double> u,
                           TailModel tail) {
  RenewalLaw law;
  law.label = std::move(label);
  law.horizon = static_cast<std::int64_t>(u.size()) - 1;
  law.f = f_from_u(u);
  law.u = std::move(u);
  law.tail = tail;
  return law;
}

RenewalLaw kaluza_power_law(double gamma, double c, std::int64_t horizon) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw Error("kaluza_power_law: gamma must lie in (0,1)");
  if (!(c > 0.0 && c <= 1.0))
    throw Error("kaluza_power_law: c must lie in (0,1]");
  const double cmax = std::exp2(-gamma);
  if (c > cmax * (1.0 + 1e-12))
    throw KaluzaViolation("kaluza_power_law: c = " + std::to_string(c) +
                          " violates u_0 u_2 >= u_1^2 (needs c <= 2^-gamma = " +
                          std::to_string(cmax) + ")");
  std::vector<double> u(static_cast<std::size_t>(horizon) + 1);
  u[0] = 1.0;
  for (std::int64_t n = 1; n <= horizon; ++n)
    u[static_cast<std::size_t>(n)] =
        c * std::pow(static_cast<double>(n), -gamma);
  return make_law_from_u(
      "kaluza(" + format_param(gamma) + "," + format_param(c) + ")",
      std::move(u), TailModel::power(gamma, c));
}

RenewalLaw delay_law(const RenewalLaw& law, double p) {
  if (!(p >= 0.0 && p < 1.0))
    throw Error("delay_law: p must lie in [0,1); p = 1 degenerates to the "
                "every-step law");
  std::vector<double> f(law.f.size(), 0.0);
  for (std::size_t n = 1; n < f.size(); ++n) f[n] = (1.0 - p) * law.f[n];
  if (f.size() > 1) f[1] += p;
  TailModel tail = law.tail;
  if (tail.kind == TailModel::Kind::power_law && tail.exponent < 1.0)
    tail.constant /= (1.0 - p);  // U' ~ U/(1-p) in the heavy-tail regime
  RenewalLaw out = make_law_from_f(
      "delay(" + format_param(p) + ")∘" + law.label, std::move(f),
      law.horizon, tail);
  return out;
}

ComposedLaw compose_laws(const RenewalLaw& a, const RenewalLaw& b,
                         std::int64_t horizon) {
  const std::size_t cap = static_cast<std::size_t>(horizon) + 1;
  std::vector<double> f3 = series::compose(
      std::span<const double>(a.f).subspan(0, std::min(a.f.size(), cap)), b.f,
      cap);
  double kept = 0.0;
  for (std::size_t n = 1; n < f3.size(); ++n) {
    if (f3[n] < 0.0) {
      if (f3[n] < -1e-10)
        throw Error("compose_laws: negative coefficient " +
                    std::to_string(f3[n]) + " at degree " + std::to_string(n));
      f3[n] = 0.0;
    }
    kept += f3[n];
  }
  f3[0] = 0.0;
  // Total composed mass is F_a evaluated at the stored mass of b.
  const double total = series::evaluate(a.f, b.inter_arrival_mass());
  ComposedLaw out;
  out.law = make_law_from_f(a.label + "∘" + b.label, std::move(f3), horizon);
  out.discarded_mass = std::max(0.0, total - kept);
  return out;
}

namespace {

RenewalLaw walk_line(std::int64_t horizon) {
  // Simple walk on the line: u_{2n} = C(2n,n) 4^{-n}, first-return pmf
  // f_{2n} = u_{2n}/(2n-1); odd indices carry no mass.
  std::vector<double> u(static_cast<std::size_t>(horizon) + 1, 0.0);
  std::vector<double> f(static_cast<std::size_t>(horizon) + 1, 0.0);
  u[0] = 1.0;
  double val = 1.0;
  for (std::int64_t n = 1; 2 * n <= horizon; ++n) {
    val *= static_cast<double>(2 * n - 1) / static_cast<double>(2 * n);
    u[static_cast<std::size_t>(2 * n)] = val;
    f[static_cast<std::size_t>(2 * n)] = val / static_cast<double>(2 * n - 1);
  }
  RenewalLaw law;
  law.label = "walk-line";
  law.horizon = horizon;
  law.f = std::move(f);
  law.u = std::move(u);
  law.tail = TailModel::power(0.5, std::sqrt(2.0 / M_PI));
  return law;
}

RenewalLaw geometric_stay(double r, std::int64_t horizon) {
  if (!(r > 0.0 && r < 1.0))
    throw Error("geometric-stay: r must lie in (0,1)");
  // f_n = r (1-r)^{n-1}  =>  u_n = r for all n >= 1.
  std::vector<double> u(static_cast<std::size_t>(horizon) + 1, r);
  std::vector<double> f(static_cast<std::size_t>(horizon) + 1, 0.0);
  u[0] = 1.0;
  double g = r;
  for (std::int64_t n = 1; n <= horizon; ++n) {
    f[static_cast<std::size_t>(n)] = g;
    g *= (1.0 - r);
  }
  RenewalLaw law;
  law.label = "geometric-stay(" + format_param(r) + ")";
  law.horizon = horizon;
  law.f = std::move(f);
  law.u = std::move(u);
  law.tail = TailModel::power(0.0, r);
  return law;
}

RenewalLaw planar_like(std::int64_t horizon) {
  // u_n = (1/2)/n is log-convex (boundary case), so it is a renewal
  // sequence; its U(s) ~ -log(1-s) matches the planar-walk growth class.
  std::vector<double> u(static_cast<std::size_t>(horizon) + 1);
  u[0] = 1.0;
  for (std::int64_t n = 1; n <= horizon; ++n)
    u[static_cast<std::size_t>(n)] = 0.5 / static_cast<double>(n);
  return make_law_from_u("planar-like", std::move(u), TailModel::power(1.0, 0.5));
}

struct ParsedName {
  std::string base;
  std::vector<double> params;
};

ParsedName parse_law_name(const std::string& name) {
  ParsedName out;
  const auto open = name.find('(');
  if (open == std::string::npos) {
    out.base = name;
    return out;
  }
  if (name.back() != ')') throw UnknownLaw("malformed law name: " + name);
  out.base = name.substr(0, open);
  std::string args = name.substr(open + 1, name.size() - open - 2);
  std::istringstream is(args);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      out.params.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw UnknownLaw("malformed parameter '" + tok + "' in " + name);
    }
  }
  return out;
}

}  // namespace

RenewalLaw builtin_law(const std::string& name, std::int64_t horizon) {
  if (horizon < 1) throw Error("builtin_law: horizon must be positive");
  const ParsedName parsed = parse_law_name(name);
  const auto& ps = parsed.params;
  if (parsed.base == "walk-line") {
    return walk_line(horizon);
  } else if (parsed.base == "geometric-stay") {
    return geometric_stay(ps.empty() ? 0.5 : ps.at(0), horizon);
  } else if (parsed.base == "kaluza") {
    const double gamma = ps.empty() ? 0.75 : ps.at(0);
    const double c = ps.size() > 1 ? ps.at(1) : std::exp2(-gamma);
    return kaluza_power_law(gamma, c, horizon);
  } else if (parsed.base == "walk-line-composed") {
    RenewalLaw base = walk_line(horizon);
    RenewalLaw out = compose_laws(base, base, horizon).law;
    out.label = "walk-line-composed";
    return out;
  } else if (parsed.base == "loglog") {
    RenewalLaw base = planar_like(horizon);
    RenewalLaw out = compose_laws(base, base, horizon).law;
    out.label = "loglog";
    return out;
  }
  throw UnknownLaw("unknown law name: " + name);
}

SlopeFit fit_log_log(std::span<const double> series, std::int64_t lo,
                     std::int64_t hi, int points) {
  SlopeFit fit;
  fit.fit_lo = lo;
  fit.fit_hi = hi;
  if (lo < 1 || hi <= lo || hi >= static_cast<std::int64_t>(series.size()))
    throw Error("fit_log_log: bad fit range");
  std::vector<double> xs, ys;
  const double ratio = std::pow(static_cast<double>(hi) / lo,
                                1.0 / std::max(1, points - 1));
  double pos = static_cast<double>(lo);
  std::int64_t prev = -1;
  for (int i = 0; i < points; ++i, pos *= ratio) {
    const std::int64_t n = std::min<std::int64_t>(
        hi, static_cast<std::int64_t>(std::llround(pos)));
    if (n == prev) continue;
    prev = n;
    const double v = series[static_cast<std::size_t>(n)];
    if (v <= 0.0) continue;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(v));
  }
  fit.points = static_cast<int>(xs.size());
  if (fit.points < 3) throw Error("fit_log_log: fewer than 3 usable points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - fit.intercept - fit.slope * xs[i];
    rss += r * r;
  }
  fit.stderr_ = xs.size() > 2
                    ? std::sqrt(rss / (n - 2.0) / sxx)
                    : 0.0;
  return fit;
}

LawStats law_stats(const RenewalLaw& law) {
  LawStats st;
  const std::size_t len = law.u.size();
  st.U.resize(len);
  st.w.resize(len);
  double su = 0.0, sw = 0.0;
  for (std::size_t n = 0; n < len; ++n) {
    su += law.u[n];
    sw += law.u[n] * law.u[n];
    st.U[n] = su;
    st.w[n] = sw;
  }

  if (law.tail.kind == TailModel::Kind::power_law) {
    const double e = law.tail.exponent;
    if (2.0 * e > 1.0) {
      st.square_sum.kind = SquareSumVerdict::Kind::convergent;
      // integral bound on sum_{n>H} c^2 n^{-2e}
      const double c = law.tail.constant;
      const double tail = c * c *
                          std::pow(static_cast<double>(law.horizon), 1.0 - 2.0 * e) /
                          (2.0 * e - 1.0);
      st.square_sum.total = sw + tail;
      st.square_sum.note = "tail bound from power-law model, remainder <= " +
                           std::to_string(tail);
    } else {
      st.square_sum.kind = SquareSumVerdict::Kind::divergent;
      st.square_sum.total = sw;
      st.square_sum.note = "2*exponent <= 1, square sum diverges";
    }
  } else {
    st.square_sum.kind = SquareSumVerdict::Kind::undetermined;
    st.square_sum.total = sw;
    st.square_sum.note = "no tail model; undetermined beyond horizon";
  }

  if (st.square_sum.kind == SquareSumVerdict::Kind::convergent) {
    // theta_s counts n >= 1 only, so drop u_0^2 = 1.
    const double body = std::max(st.square_sum.total - 1.0, 0.0);
    st.theta_s = body > 0.0 ? std::min(1.0, 1.0 / std::sqrt(body)) : 1.0;
  } else {
    st.theta_s = 0.0;
  }

  if (law.horizon >= 64) {
    const std::int64_t lo = std::max<std::int64_t>(16, law.horizon / 100);
    st.tail_slope = fit_log_log(law.u, lo, law.horizon);
  }
  return st;
}

double max_identity_residual(const RenewalLaw& law) {
  double worst = 0.0;
  for (std::int64_t n = 1; n <= law.horizon; ++n) {
    // Kahan summation; the convolution terms are nonnegative so the
    // condition number is 1 and the compensated sum is reliable.
    double acc = 0.0, comp = 0.0;
    const double* fp = law.f.data();
    const double* up = law.u.data() + n;
    for (std::int64_t k = 1; k <= n; ++k) {
      const double term = fp[k] * up[-k];
      const double y = term - comp;
      const double t = acc + y;
      comp = (t - acc) - y;
      acc = t;
    }
    const double un = law.u[static_cast<std::size_t>(n)];
    const double resid = std::abs(un - acc);
    const double rel = resid / std::max(un, 1e-300);
    if (un > 0.0)
      worst = std::max(worst, rel);
    else
      worst = std::max(worst, resid);  // absolute on exact zeros
  }
  return worst;
}

double renewal_dominance_gap(std::span<const double> u, std::int64_t r,
                             std::int64_t k, std::int64_t m) {
  if (r < 0 || k < 1 || m < 0) throw Error("renewal_dominance_gap: bad triple");
  if (r + m * k >= static_cast<std::int64_t>(u.size()))
    throw Error("renewal_dominance_gap: r + m*k beyond horizon");
  double lhs = 0.0, rhs = 0.0;
  for (std::int64_t j = 0; j <= m; ++j) {
    lhs += u[static_cast<std::size_t>(r + j * k)];
    rhs += u[static_cast<std::size_t>(j * k)];
  }
  return rhs - lhs;
}

bool is_log_convex(std::span<const double> u, double rel_slack) {
  for (std::size_t k = 1; k + 1 < u.size(); ++k) {
    const double lhs = u[k - 1] * u[k + 1];
    const double rhs = u[k] * u[k];
    if (lhs < rhs * (1.0 - rel_slack) - 1e-300) return false;
  }
  return true;
}

void validate_law(const RenewalLaw& law, double rel_tol) {
  if (law.horizon < 0) throw Error("validate: negative horizon");
  const std::size_t len = static_cast<std::size_t>(law.horizon) + 1;
  if (law.f.size() != len || law.u.size() != len)
    throw Error("validate: array sizes disagree with horizon");
  if (law.u[0] != 1.0) throw Error("validate: u[0] != 1");
  if (law.f[0] != 0.0) throw Error("validate: f[0] != 0");
  check_pmf(law.f);
  for (std::size_t n = 0; n < len; ++n)
    if (law.u[n] < 0.0 || law.u[n] > 1.0)
      throw Error("validate: u[" + std::to_string(n) + "] outside [0,1]");
  const double resid = max_identity_residual(law);
  if (resid > rel_tol)
    throw Error("validate: renewal identity residual " + std::to_string(resid) +
                " exceeds " + std::to_string(rel_tol));
}

}  // namespace rcl
