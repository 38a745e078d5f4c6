#include "truncauct/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace truncauct {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return (h / 6.0) * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate: abs_tol must be positive");
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  return sign * adapt(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double abs_tol, int max_iter) {
  if (!(lo < hi)) throw std::invalid_argument("bisect: empty bracket");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw std::invalid_argument("bisect: no sign change over the bracket");
  }
  for (int i = 0; i < max_iter && (hi - lo) > abs_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

LinearInterp::LinearInterp(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 2) {
    throw std::invalid_argument("LinearInterp: need two or more knots");
  }
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw std::invalid_argument("LinearInterp: knots must be strictly increasing");
    }
  }
}

double LinearInterp::eval(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin());
  const double w = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
  return y_[i - 1] + w * (y_[i] - y_[i - 1]);
}

double LinearInterp::slope_at(double x) const {
  std::size_t i;
  if (x <= x_.front()) {
    i = 1;
  } else if (x >= x_.back()) {
    i = x_.size() - 1;
  } else {
    i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) -
                                 x_.begin());
  }
  return (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
}

double monotone_rearrange(std::vector<double>& values) {
  if (values.empty()) return 0.0;
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  std::size_t changed = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (sorted[i] != values[i]) ++changed;
  }
  values = std::move(sorted);
  return static_cast<double>(changed) / static_cast<double>(values.size());
}

bool is_increasing_on_grid(const std::function<double(double)>& f, double lo,
                           double hi, int grid_points) {
  if (grid_points < 2 || !(lo < hi)) {
    throw std::invalid_argument("is_increasing_on_grid: bad grid");
  }
  double prev = f(lo);
  for (int i = 1; i < grid_points; ++i) {
    const double x =
        lo + (hi - lo) * static_cast<double>(i) / (grid_points - 1);
    const double cur = f(x);
    if (!(cur > prev)) return false;
    prev = cur;
  }
  return true;
}

}  // namespace truncauct
