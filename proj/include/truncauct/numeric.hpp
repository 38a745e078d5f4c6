#ifndef TRUNCAUCT_NUMERIC_HPP
#define TRUNCAUCT_NUMERIC_HPP

#include <functional>
#include <vector>

namespace truncauct {

// Adaptive Simpson quadrature with an absolute error target. All integrands
// in this project are smooth on the interior, so a fixed absolute tolerance
// gives deterministic, platform-stable results.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 40);

// Bisection on [lo, hi]. Requires f(lo) and f(hi) to have opposite signs
// (or one of them to be zero). Stops when the bracket width falls below
// abs_tol or after max_iter halvings, whichever comes first.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double abs_tol = 1e-12, int max_iter = 200);

// Piecewise-linear curve on a strictly increasing knot vector. eval() clamps
// to the end values outside the knot range; slope_at() returns the slope of
// the segment containing x.
class LinearInterp {
 public:
  LinearInterp() = default;
  LinearInterp(std::vector<double> x, std::vector<double> y);

  double eval(double x) const;
  double slope_at(double x) const;
  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

// Sorts the values in place. Returns the fraction of positions whose value
// changed, which doubles as a "was anything out of order" signal.
double monotone_rearrange(std::vector<double>& values);

// Verifies that f is strictly increasing across a uniform grid of
// grid_points on [lo, hi] before handing it to an inversion routine.
bool is_increasing_on_grid(const std::function<double(double)>& f, double lo,
                           double hi, int grid_points = 1000);

}  // namespace truncauct

#endif  // TRUNCAUCT_NUMERIC_HPP
