#include "mathieu/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>

#include "mathieu/wkb.hpp"

namespace mathieu {

namespace {

using cld = std::complex<long double>;
constexpr long double kPi = std::numbers::pi_v<long double>;

using State = std::array<long double, 4>;

// (u1, u1', u2, u2') sampled at z_j = j pi / n, j = 0..n.
std::vector<State> fundamental_samples(const MonodromySetup& s, int n) {
  namespace odeint = boost::numeric::odeint;
  if (!(s.tol > 0 && s.tol <= 1e-6)) throw std::invalid_argument("monodromy: tolerance must lie in (0, 1e-6]");
  const long double lambda = s.lambda, q = s.q;
  auto rhs = [lambda, q](const State& x, State& dx, long double z) {
    long double k = lambda - 2 * q * std::cos(2 * z);
    dx[0] = x[1];
    dx[1] = -k * x[0];
    dx[2] = x[3];
    dx[3] = -k * x[2];
  };
  std::vector<long double> times(n + 1);
  for (int j = 0; j <= n; ++j) times[j] = kPi * j / n;
  times[n] = kPi;
  std::vector<State> out;
  out.reserve(n + 1);
  State x{1, 0, 0, 1};
  auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State, long double>>(
      static_cast<long double>(s.tol), static_cast<long double>(s.tol));
  try {
    odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), kPi / n / 4,
                            [&out](const State& st, long double) { out.push_back(st); },
                            odeint::max_step_checker(static_cast<int>(std::min<long>(s.max_steps, 1L << 30))));
  } catch (const std::exception& e) {
    throw IntegratorFailure(std::string("monodromy: integration failed (") + e.what() + ") at lambda=" +
                            std::to_string(s.lambda) + ", q=" + std::to_string(s.q));
  }
  if (static_cast<int>(out.size()) != n + 1) throw IntegratorFailure("monodromy: integrator stopped early");
  return out;
}

int samples_for(double lambda, double q) {
  return 64 + 8 * static_cast<int>(std::ceil(std::abs(lambda) + 2 * std::abs(q)));
}

// Mean advance of the Pruefer angle atan2(u, u') per period, divided by pi.
long double rotation_number(const std::vector<State>& f, int periods = 256) {
  long double theta = 0;
  long double su = 0, sdu = 1;  // start vector (u, u') = (0, 1)
  for (int p = 0; p < periods; ++p) {
    long double prev = std::atan2(su, sdu);
    long double base = theta - prev;
    long double last = prev;
    long double nu = su, ndu = sdu;
    for (const State& st : f) {
      nu = su * st[0] + sdu * st[2];
      ndu = su * st[1] + sdu * st[3];
      long double a = std::atan2(nu, ndu);
      while (a - last > kPi) a -= 2 * kPi;
      while (a - last < -kPi) a += 2 * kPi;
      last = a;
    }
    theta = base + last;
    long double r = std::hypot(nu, ndu);
    su = nu / r;
    sdu = ndu / r;
  }
  return theta / (kPi * periods);
}

// Nearest value to target of the form 2n + sign * x.
long double nearest_branch(long double target, long double x) {
  long double best = 0, dist = INFINITY;
  for (int sign : {1, -1}) {
    long double n = std::round((target - sign * x) / 2);
    long double v = 2 * n + sign * x;
    if (std::abs(v - target) < dist) {
      dist = std::abs(v - target);
      best = v;
    }
  }
  return best;
}

struct TraceNu {
  long double nu;
  long double nu_imag;
  bool stable;
  bool band_edge;
};

TraceNu nu_from_trace(long double t, long double rho) {
  const long double half = t / 2;
  if (std::abs(2 - std::abs(t)) < 1e-10L) {
    long double v = nearest_branch(rho, t > 0 ? 0 : 1);
    return {v, 0, true, true};
  }
  if (std::abs(half) < 1) {
    return {nearest_branch(rho, std::acos(half) / kPi), 0, true, false};
  }
  long double v = nearest_branch(rho, half > 0 ? 0 : 1);
  return {v, std::acosh(std::abs(half)) / kPi, false, false};
}

struct MonoRun {
  TraceNu nu;
  long double trace;
};

MonoRun run_monodromy(const MonodromySetup& s) {
  auto f = fundamental_samples(s, samples_for(s.lambda, s.q));
  long double t = f.back()[0] + f.back()[3];
  return {nu_from_trace(t, rotation_number(f)), t};
}

}  // namespace

double monodromy_trace(const MonodromySetup& s) {
  auto f = fundamental_samples(s, samples_for(s.lambda, s.q));
  return static_cast<double>(f.back()[0] + f.back()[3]);
}

FloquetResult monodromy_nu(const MonodromySetup& s) {
  MonoRun a = run_monodromy(s);
  MonodromySetup tight = s;
  tight.tol = s.tol / 10;
  MonoRun b = run_monodromy(tight);

  FloquetResult r;
  r.method = "monodromy";
  r.nu = static_cast<double>(a.nu.nu);
  r.nu_imag = static_cast<double>(a.nu.nu_imag);
  r.stable = a.nu.stable;
  r.band_edge = a.nu.band_edge;
  r.est_error = static_cast<double>(std::max(std::abs(a.nu.nu - b.nu.nu), std::abs(a.nu.nu_imag - b.nu.nu_imag)));
  if (r.band_edge) r.warnings.push_back("band edge: |trace| within 1e-10 of 2, nu reported as the nearest integer");
  if (!r.stable) r.warnings.push_back("unstable: |trace| > 2, exponent has imaginary part " + std::to_string(r.nu_imag));
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// Eigenvalues of the (2K+1) mode truncation, ascending.
Eigen::VectorXd hill_spectrum(double nu, double q, int K) {
  const int n = 2 * K + 1;
  Eigen::VectorXd diag(n), sub(n - 1);
  for (int k = -K; k <= K; ++k) diag[k + K] = (nu + 2.0 * k) * (nu + 2.0 * k);
  sub.setConstant(q);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

HillValue hill_char_value(double nu, double q, int K) {
  if (K < 20) throw std::invalid_argument("hill_char_value: K must be at least 20");
  const double shift = 2 * std::round(nu / 2);
  const double nr = nu - shift;
  K = std::max(K, static_cast<int>(std::ceil(std::abs(nu) / 2)) + 20);

  auto rank_of = [&](int kk) {
    int r = 0;
    for (int k = -kk; k <= kk; ++k) {
      if ((nr + 2.0 * k) * (nr + 2.0 * k) < nu * nu * (1 - 1e-15) ) ++r;
    }
    return r;
  };
  Eigen::VectorXd e1 = hill_spectrum(nr, q, K);
  Eigen::VectorXd e2 = hill_spectrum(nr, q, K + 10);
  HillValue v;
  v.lambda = e1[rank_of(K)];
  double l2 = e2[rank_of(K + 10)];
  v.delta = std::abs(v.lambda - l2);
  v.integer_nu = std::abs(nu - std::round(nu)) < 1e-12;
  if (v.delta > 1e-10 * std::max(1.0, std::abs(v.lambda))) {
    throw NotConverged("hill_char_value: K=" + std::to_string(K) + " and K+10 differ by " + std::to_string(v.delta));
  }
  return v;
}

namespace {

// Number of eigenvalues below lambda of the tridiagonal matrix with diagonal
// (2k + offset)^2, k = -K..K, and off-diagonal q (Sturm count via LDL^T).
int count_below(double lambda, double q, int offset, int K) {
  int count = 0;
  long double d = 0;
  bool first = true;
  for (int k = -K; k <= K; ++k) {
    long double a = std::pow(2.0L * k + offset, 2) - lambda;
    d = first ? a : a - static_cast<long double>(q) * q / d;
    if (d == 0) d = -1e-300L;
    first = false;
    if (d < 0) ++count;
  }
  return count;
}

long double hill_determinant(long double lambda, long double q, int K) {
  // rows k = -K..K: diagonal 1, off-diagonal -q / (lambda - 4k^2)
  auto xi = [&](int k) { return -q / (lambda - 4.0L * k * k); };
  long double dm2 = 1, dm1 = 1;
  for (int k = -K; k <= K; ++k) {
    long double d = (k == -K) ? 1 : dm1 - xi(k) * xi(k - 1) * dm2;
    dm2 = dm1;
    dm1 = d;
  }
  return dm1;
}

long double hill_cos(long double lambda, long double q, int K) {
  long double s2;
  if (lambda >= 0) {
    long double s = std::sin(kPi * std::sqrt(lambda) / 2);
    s2 = s * s;
  } else {
    long double s = std::sinh(kPi * std::sqrt(-lambda) / 2);
    s2 = -s * s;
  }
  return 1 - 2 * hill_determinant(lambda, q, K) * s2;
}

}  // namespace

FloquetResult hill_nu(double lambda, double q, int K) {
  FloquetResult r;
  r.method = "hill";
  const int Kc = std::max(K, static_cast<int>(std::sqrt(std::abs(lambda)) / 2) + 30);
  const int n = count_below(lambda, q, 0, Kc) + count_below(lambda, q, 1, Kc);

  // determinant tail decays like q^2 / K^3
  const int Kd = std::min(1'000'000, std::max(Kc, static_cast<int>(std::cbrt(q * q * 1e15 / 48)) + 10));
  long double c = 0;
  bool near_pole = false;
  for (int k = 0; k <= Kd; ++k) {
    if (std::abs(lambda - 4.0 * k * k) < 1e-9 * std::max(1.0, std::abs(lambda))) near_pole = true;
  }
  auto cos_at = [&](int kk) {
    if (!near_pole) return hill_cos(lambda, q, kk);
    long double h = 1e-6L * std::max(1.0, std::abs(lambda));
    return (hill_cos(lambda + h, q, kk) + hill_cos(lambda - h, q, kk)) / 2;
  };
  c = cos_at(Kd);
  long double c2 = cos_at(Kd / 2);

  auto to_nu = [&](long double cc) -> std::pair<long double, long double> {
    if (n % 2 == 1) {
      int k = (n - 1) / 2;
      long double x = std::acos(std::clamp(cc, -1.0L, 1.0L)) / kPi;
      return {k % 2 == 0 ? k + x : k + 1 - x, 0};
    }
    return {n / 2, std::acosh(std::max(1.0L, std::abs(cc))) / kPi};
  };
  auto [nu, im] = to_nu(c);
  auto [nu2, im2] = to_nu(c2);
  r.nu = static_cast<double>(nu);
  r.nu_imag = static_cast<double>(im);
  r.stable = n % 2 == 1;
  r.band_edge = std::abs(1 - std::abs(c)) < 5e-11L;
  r.est_error = static_cast<double>(std::max(std::abs(nu - nu2), std::abs(im - im2)));
  if (near_pole) r.warnings.push_back("lambda sits on a pole of the normalized determinant; averaged across it");
  if (!r.stable) r.warnings.push_back("unstable: exponent has imaginary part " + std::to_string(r.nu_imag));
  return r;
}

// ---------------------------------------------------------------------------

std::complex<long double> hyp2f1(long double a, long double b, long double c, std::complex<long double> z,
                                 long double tol) {
  if (std::abs(z) >= 1) throw std::domain_error("hyp2f1: |z| >= 1 needs analytic continuation");
  if (c <= 0 && std::floor(c) == c) throw std::domain_error("hyp2f1: c is a non-positive integer");
  cld term = 1, sum = 1;
  const long double az = std::abs(z);
  for (int n = 0; n < 1'000'000; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z;
    sum += term;
    if (term == cld(0)) return sum;
    // for n past the Pochhammer transients the ratio is below (1 + az)/2
    if (n > std::abs(a) + std::abs(b) + std::abs(c) + 2) {
      long double ratio = std::abs((a + n + 1) * (b + n + 1) / ((c + n + 1) * (n + 2))) * az;
      if (ratio < 1 && std::abs(term) * ratio / (1 - ratio) < tol * std::max<long double>(1, std::abs(sum))) {
        return sum;
      }
    }
  }
  throw NotConverged("hyp2f1: series did not reach tolerance");
}

// ---------------------------------------------------------------------------

namespace {

// p_m with coefficients converted once.
struct NumericDensity {
  struct Term {
    int j, a, b, n;
    cld c;
  };
  std::vector<Term> terms;
  int jmax = 0, amax = 0, nmin = 0, nmax = 0;

  explicit NumericDensity(const WkbDensity& d) {
    for (const auto& [k, v] : d.terms()) {
      auto [j, a, b, n] = k;
      terms.push_back({j, a, b, n, cld(v.re.to_long_double(), v.im.to_long_double())});
      jmax = std::max(jmax, j);
      amax = std::max(amax, a);
      nmin = std::min(nmin, n);
      nmax = std::max(nmax, n);
    }
  }

  cld eval(cld w, cld c, cld s, cld p) const {
    std::vector<cld> wp(jmax + 1, 1), cp(amax + 1, 1), pp(nmax - nmin + 1, 1);
    for (int j = 1; j <= jmax; ++j) wp[j] = wp[j - 1] * w;
    for (int a = 1; a <= amax; ++a) cp[a] = cp[a - 1] * c;
    cld pinv = cld(1) / p;
    cld acc = 1;
    for (int n = 0; n >= nmin; --n) {
      pp[n - nmin] = acc;
      acc *= pinv;
    }
    acc = p;
    for (int n = 1; n <= nmax; ++n) {
      pp[n - nmin] = acc;
      acc *= p;
    }
    cld sum = 0;
    for (const auto& t : terms) {
      cld v = t.c * wp[t.j] * cp[t.a] * pp[t.n - nmin];
      if (t.b) v *= s;
      sum += v;
    }
    return sum;
  }
};

struct Node {
  cld z;
  cld dz;  // dz/dt times the weight
};

std::vector<Node> contour_nodes(const ContourSpec& spec, cld& focus) {
  if (spec.M < 256 || spec.M % 2 != 0) throw std::invalid_argument("contour: M must be even and at least 256");
  const cld w = spec.w;
  std::vector<Node> nodes(spec.M);
  if (spec.cycle == Cycle::ALPHA) {
    for (int j = 0; j < spec.M; ++j) {
      nodes[j] = {cld(-kPi / 2 + kPi * j / spec.M, spec.h), cld(kPi / spec.M)};
    }
    focus = 0;
  } else {
    if (!(spec.h > 0)) throw std::invalid_argument("contour: BETA needs h > 0");
    const cld a = std::acos(w) / 2.0L;
    if (std::abs(a) < 1e-8L) throw std::invalid_argument("contour: turning points coalesce at w = 1");
    const long double rho = std::acosh(1 + spec.h / std::abs(a));
    for (int j = 0; j < spec.M; ++j) {
      long double t = 2 * kPi * j / spec.M;
      cld arg(rho, t);
      nodes[j] = {a * std::cosh(arg), a * cld(0, 1) * std::sinh(arg) * (2 * kPi / spec.M)};
    }
    focus = a;
  }
  // keep clear of turning points other than the enclosed pair
  for (int k = -2; k <= 2; ++k) {
    for (int sgn : {1, -1}) {
      if (spec.cycle == Cycle::BETA && k == 0) continue;
      cld a = std::acos(w) / 2.0L;
      cld tp = static_cast<long double>(sgn) * a + kPi * static_cast<long double>(k);
      for (const auto& nd : nodes) {
        long double lim = spec.cycle == Cycle::BETA ? spec.h / 2 : 1e-6L;
        if (std::abs(nd.z - tp) < lim) {
          throw std::invalid_argument("contour: passes within " + std::to_string(static_cast<double>(lim)) +
                                      " of a turning point");
        }
      }
    }
  }
  return nodes;
}

// Half the counterclockwise ellipse integral, started on the principal root
// at the right vertex, already carries the beta period sign.
constexpr long double kBetaLoopSign = 1;

}  // namespace

std::complex<long double> contour_integral_pm(int m, const ContourSpec& spec) {
  cld focus;
  std::vector<Node> nodes = contour_nodes(spec, focus);
  const cld w = spec.w;
  NumericDensity d(wkb_density(m));
  BranchTracker branch;
  cld sum = 0;
  cld prev;
  for (std::size_t j = 0; j <= nodes.size(); ++j) {
    const Node& nd = nodes[j % nodes.size()];
    cld p = branch.root(w, nd.z);
    if (j > 0 && std::abs(p - prev) > 0.5L * std::abs(prev)) {
      throw BranchJump("contour: P jumps between adjacent nodes; increase M or move the contour");
    }
    prev = p;
    if (j == nodes.size()) break;
    sum += d.eval(w, std::cos(2.0L * nd.z), std::sin(2.0L * nd.z), p) * nd.dz;
  }
  // the continued root must come back to its starting value
  BranchTracker first;
  cld p0 = first.root(w, nodes[0].z);
  if (std::abs(prev - p0) > 1e-8L * std::abs(p0)) throw BranchJump("contour: root does not close around the cycle");
  if (spec.cycle == Cycle::BETA) sum *= kBetaLoopSign / 2;
  return sum;
}

std::complex<long double> cauchy_derivative(const std::function<cld(cld)>& f, cld x0, int k, long double r, int N) {
  cld sum = 0;
  for (int n = 0; n < N; ++n) {
    long double th = 2 * kPi * n / N;
    sum += f(x0 + r * std::polar(1.0L, th)) * std::polar(1.0L, -k * th);
  }
  long double fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;
  return sum * fact / (static_cast<long double>(N) * std::pow(r, k));
}

std::complex<long double> operator_on_period(const GeneratingOperator& op, const ContourSpec& spec, long double r,
                                             int N) {
  const cld w0 = spec.w;
  std::vector<cld> samples(N);
  for (int n = 0; n < N; ++n) {
    ContourSpec s = spec;
    s.w = w0 + r * std::polar(1.0L, 2 * kPi * n / N);
    samples[n] = contour_integral_pm(0, s);
  }
  cld result = 0;
  for (const auto& t : op.terms) {
    cld sum = 0;
    for (int n = 0; n < N; ++n) sum += samples[n] * std::polar(1.0L, -t.dpow * 2 * kPi * n / N);
    long double fact = 1;
    for (int i = 2; i <= t.dpow; ++i) fact *= i;
    cld deriv = sum * fact / (static_cast<long double>(N) * std::pow(r, t.dpow));
    result += cld(t.coeff.to_long_double()) * std::pow(w0, t.wpow) * deriv;
  }
  return result;
}

}  // namespace mathieu
