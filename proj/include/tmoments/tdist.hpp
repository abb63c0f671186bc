#pragma once

#include "tmoments/errors.hpp"

namespace tmoments::tdist {

enum class MomentKind { complete, upper_partial, lower_partial };

struct MomentQuery {
  int order;
  double center;
  MomentKind kind = MomentKind::complete;
};

// Student t distribution with integer degrees of freedom n >= 1.
// Moments of order j exist iff j <= n - 1; every moment accessor throws
// MomentExistenceError outside that range.
class StudentT {
 public:
  explicit StudentT(int dof);

  int dof() const { return n_; }

  double pdf(double y) const;

  // Distribution function from the closed integer-df recursions
  // (arctangent form for odd n, algebraic form for even n), with a
  // positive-term tail series beyond |y| > sqrt(n) so both cdf and survival
  // stay relatively accurate in the far tails.
  double cdf(double y) const;
  double survival(double y) const;  // 1 - cdf, tail-accurate

  // E[Y^j]: zero for odd j, else
  // Gamma((j+1)/2) Gamma((n-j)/2) / (sqrt(pi) Gamma(n/2)) * n^(j/2).
  double raw_moment(int order) const;

  // E|Y|^j; equals raw_moment for even j.
  double abs_moment(int order) const;

  // E[(Y-m)^j] as a single hypergeometric expression; both 2F1 calls
  // terminate because one numerator parameter is a nonpositive integer.
  double central_moment(int order, double center) const;

  // E[((Y-m)_+)^j] and E[((m-Y)_+)^j].
  double upper_partial_moment(int order, double center) const;
  double lower_partial_moment(int order, double center) const;

  double moment(const MomentQuery& query) const;

 private:
  void require_order(int order) const;
  double cdf_bulk(double y) const;      // recursion form, used on [0, sqrt(n)]
  double tail_series(double y) const;   // survival for y >= sqrt(n)
  double log_tail_constant() const;     // log of n^(n/2) Gamma((n+1)/2) / (sqrt(pi) Gamma(n/2))
  double partial_tail_form(int order, double center) const;    // center >= 1/2
  double partial_small_center(int order, double center) const; // 0 < center < 1/2

  int n_;
  double log_norm_;  // log of the density normalizing constant
};

// The factor (m^2 + n)^((n - 2j + 1)/2) linking the order-(n-j) and
// order-(j-1) moments, with its exponent exposed. Valid for 1 <= j <= n.
struct InterOrderFactor {
  int dof;
  int index;
  double center;
  double exponent;
  double value;
};

InterOrderFactor interorder_factor(int dof, int index, double center);

// E[(Y-m)^(n-j)] reconstructed from the order-(j-1) moments:
// odd n uses factor * central(j-1), even n uses
// factor * (2 * upper(j-1) - central(j-1)). Valid for 1 <= j <= n.
double central_moment_via_relation(const StudentT& dist, int index, double center);

}  // namespace tmoments::tdist
