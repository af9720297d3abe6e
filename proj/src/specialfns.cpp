#include "satcov/specialfns.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

namespace satcov {

namespace {

// QUADPACK dqk15 nodes/weights. Gauss points sit at odd Kronrod indices.
constexpr std::array<double, 8> kXgk = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr std::array<double, 4> kWg = {0.1294849661688697, 0.2797053914892767,
                                       0.3818300505051189, 0.4179591836734694};

struct Segment {
  double a, b, value, error;
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double center = 0.5 * (a + b);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  std::array<double, 7> flo{}, fhi{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    flo[j] = f(center - dx);
    fhi[j] = f(center + dx);
    resk += kWgk[j] * (flo[j] + fhi[j]);
    if (j % 2 == 1) resg += kWg[(j - 1) / 2] * (flo[j] + fhi[j]);
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(flo[j] - reskh) + std::abs(fhi[j] - reskh));
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return {a, b, resk * half, err};
}

QuadratureResult integrate_segments(const std::function<double(double)>& f,
                                    const std::vector<double>& breaks,
                                    const QuadratureSpec& spec) {
  auto worse = [](const Segment& x, const Segment& y) { return x.error < y.error; };
  std::priority_queue<Segment, std::vector<Segment>, decltype(worse)> heap(worse);
  double value = 0, error = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Segment s = gk15(f, breaks[i], breaks[i + 1]);
    value += s.value;
    error += s.error;
    heap.push(s);
  }
  int splits = 0;
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
    if (splits >= spec.max_subdivisions)
      throw NumericError("adaptive quadrature did not converge after " +
                             std::to_string(splits) + " subdivisions",
                         value, error);
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw NumericError("quadrature interval collapsed below double resolution", value,
                         error);
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  return {value, error};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, const QuadratureSpec& spec) {
  if (!(a < b)) throw std::invalid_argument("integrate_adaptive requires a < b");
  if (!(spec.rel_tol > 0) || !(spec.abs_tol > 0))
    throw std::invalid_argument("quadrature tolerances must be positive");
  return integrate_segments(f, {a, b}, spec);
}

double factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative argument");
  static const std::array<double, 171> table = [] {
    std::array<double, 171> t{};
    t[0] = 1.0;
    for (int i = 1; i <= 170; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n > 170)
    throw NumericError("factorial(" + std::to_string(n) +
                       ") overflows double; work in log space");
  return table[static_cast<std::size_t>(n)];
}

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  if (n <= 60) {  // exact in double
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  }
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

double pochhammer(double m, int n) {
  if (n < 0) throw std::invalid_argument("pochhammer order must be nonnegative");
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= m + i;
  return r;
}

namespace {

double gauss_2f1_series(double a, double b, double c, double z) {
  double term = 1.0, k = 0.0;
  KahanSum sum;
  sum.add(1.0);
  for (int it = 0; it < 100000; ++it) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum.add(term);
    k += 1.0;
    if (std::abs(term) <= 1e-17 * std::abs(sum.value())) return sum.value();
  }
  throw NumericError("2F1 series did not converge", sum.value());
}

double gauss_2f1_euler(double a, double b, double c, double z) {
  // Gamma(c)/(Gamma(b)Gamma(c-b)) * \int_0^1 t^{b-1} (1-t)^{c-b-1} (1-z t)^{-a} dt
  const double logpref = std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b);
  auto integrand = [&](double t) {
    double v = (b - 1.0) * std::log(t);
    if (c - b != 1.0) v += (c - b - 1.0) * std::log1p(-t);
    v += -a * std::log1p(-z * t);
    return std::exp(v);
  };
  // The integrand concentrates near t ~ 1/|z| for strongly negative z; seed the
  // subdivision there so adaptive refinement starts resolved.
  std::vector<double> breaks{0.0};
  const double az = std::abs(z);
  if (az > 4.0) {
    for (double t = 1.0 / az; t < 0.25; t *= 4.0) breaks.push_back(t);
  }
  breaks.push_back(0.5);
  breaks.push_back(1.0);
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  spec.max_subdivisions = 4000;
  const QuadratureResult q = integrate_segments(integrand, breaks, spec);
  return std::exp(logpref) * q.value;
}

}  // namespace

double gauss_2f1(double a, double b, double c, double z) {
  if (!(c > b) || !(b > 0))
    throw std::invalid_argument("gauss_2f1 requires c > b > 0");
  if (z > 0) throw std::invalid_argument("gauss_2f1 requires z <= 0");
  if (z == 0) return 1.0;
  if (-z < 0.5) return gauss_2f1_series(a, b, c, z);
  return gauss_2f1_euler(a, b, c, z);
}

double kummer_1f1(double a, double b, double x) {
  if (!(a > 0) || !(b > 0) || x < 0)
    throw std::invalid_argument("kummer_1f1 requires a, b > 0 and x >= 0");
  double term = 1.0;
  KahanSum sum;
  sum.add(1.0);
  for (int k = 0; k < 1000000; ++k) {
    term *= (a + k) * x / ((b + k) * (k + 1.0));
    sum.add(term);
    if (term <= 1e-17 * sum.value()) return sum.value();
  }
  throw NumericError("1F1 series did not converge", sum.value());
}

double erlang_cdf_bound(int k_tilde, double theta, double x) {
  if (k_tilde < 1) throw std::invalid_argument("erlang shape must be >= 1");
  if (!(theta > 0)) throw std::invalid_argument("erlang scale must be positive");
  if (x < 0) throw std::invalid_argument("erlang evaluated at negative point");
  const double q = x / theta;
  KahanSum sum;
  if (q < 700.0) {
    double term = std::exp(-q);
    for (int n = 0; n < k_tilde; ++n) {
      sum.add(term);
      term *= q / (n + 1.0);
    }
  } else {
    for (int n = 0; n < k_tilde; ++n)
      sum.add(std::exp(n * std::log(q) - q - std::lgamma(n + 1.0)));
  }
  return std::clamp(1.0 - sum.value(), 0.0, 1.0);
}

double gamma_p(double a, double x) {
  if (!(a > 0) || x < 0) throw std::invalid_argument("gamma_p requires a > 0, x >= 0");
  if (x == 0) return 0.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {  // series for P
    double ap = a, del = 1.0 / a, sum = del;
    for (int i = 0; i < 10000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-16)
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    throw NumericError("incomplete gamma series did not converge");
  }
  // continued fraction for Q
  const double fpmin = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / fpmin, d = 1.0 / b, h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16)
      return 1.0 - h * std::exp(-x + a * std::log(x) - lg);
  }
  throw NumericError("incomplete gamma continued fraction did not converge");
}

namespace {

double inc_beta_cf(double a, double b, double x) {
  const double fpmin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const int m2 = 2 * i;
    double aa = i * (b - i) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + i) * (qab + i) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return h;
  }
  throw NumericError("incomplete beta continued fraction did not converge");
}

}  // namespace

double inc_beta_reg(double a, double b, double x) {
  if (!(a > 0) || !(b > 0))
    throw std::invalid_argument("inc_beta_reg requires a > 0, b > 0");
  if (!(x >= 0.0) || !(x <= 1.0))
    throw std::invalid_argument("inc_beta_reg evaluated outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double lfront = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                        a * std::log(x) + b * std::log1p(-x);
  if (x < (a + 1.0) / (a + b + 2.0))
    return std::exp(lfront) * inc_beta_cf(a, b, x) / a;
  return 1.0 - std::exp(lfront) * inc_beta_cf(b, a, 1.0 - x) / b;
}

double bell_incomplete(int n, int q, std::span<const double> x) {
  if (q < 1 || q > n) throw std::invalid_argument("bell_incomplete requires 1 <= q <= n");
  if (static_cast<int>(x.size()) < n - q + 1)
    throw std::invalid_argument("bell_incomplete needs x_1..x_{n-q+1}");
  // B[i][j] over 0..n x 0..q
  std::vector<std::vector<double>> bell(n + 1, std::vector<double>(q + 1, 0.0));
  bell[0][0] = 1.0;
  for (int j = 1; j <= q; ++j) {
    for (int i = j; i <= n; ++i) {
      KahanSum s;
      const int tmax = std::min(i - j + 1, n - q + 1);
      for (int t = 1; t <= tmax; ++t)
        s.add(binomial(i - 1, t - 1) * x[t - 1] * bell[i - t][j - 1]);
      bell[i][j] = s.value();
    }
  }
  return bell[n][q];
}

}  // namespace satcov
