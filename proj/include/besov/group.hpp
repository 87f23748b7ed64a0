// The ax+b group: group law, Haar measure, left/right translations of
// sampled group functions, and the three group-space norms (L, T, P).
#pragma once

#include <string>

#include "besov/funcnorms.hpp"
#include "besov/transform.hpp"

namespace besov {

struct GroupPoint {
  Point x{0.0, 0.0};
  double t = 1.0;
};

GroupPoint gmul(const GroupPoint& g1, const GroupPoint& g2);
GroupPoint ginv(const GroupPoint& g);

double haar_weight(const GroupPoint& pt, int dim);  // 1 / t^{d+1}
double haar_module(const GroupPoint& pt, int dim);  // t^{-d}

/// w(x,t) = (1+|x|)^v (t^{r2} + t^{-r1})
struct WeightSpec {
  double v = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double operator()(const GroupPoint& pt) const;
};

enum class GroupSpace { L, T, P };
const char* to_string(GroupSpace s);
GroupSpace group_space_from_string(const std::string& s);

struct GroupNormParams {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  double a = 1.5;
  GroupSpace space = GroupSpace::L;
};

void validate(const GroupNormParams& gp);

/// L_{(z,r)}F(x,t) = F((x-z)/r, t/r). r must be base^{k/nu} for an integer k.
GroupFunction left_translate(const GroupFunction& F, Point z, double r);
/// R_{(z,r)}F(x,t) = F(x+tz, rt).
GroupFunction right_translate(const GroupFunction& F, Point z, double r);

/// Ladder step count k with r = base^{k/nu}; throws if r is not ladder-aligned.
int ladder_steps(const ScaleLadder& ladder, double r);

/// Group norm with respect to dx dt / t^{d+1}, restricted to the ladder.
double group_norm(const GroupFunction& F, const GroupNormParams& gp);

enum class Side { Left, Right };
const char* to_string(Side s);

struct ScalingCheck {
  GroupSpace space = GroupSpace::L;
  Side side = Side::Left;
  Point z{0, 0};
  double r = 1.0;
  double predicted = 1.0;
  double measured = 1.0;
  bool is_bound = false;  // predicted is an upper bound, not an equality
  std::size_t dropped = 0;

  double ratio() const { return measured / predicted; }
};

/// Operator-norm prediction for a translation on a group space. For T-right
/// the constant is taken as C = 1 with b = d/min(p,q).
double predicted_scaling(const GroupNormParams& gp, int dim, Side side, Point z, double r, bool* is_bound = nullptr);

ScalingCheck translation_scaling_check(const GroupFunction& F, const GroupNormParams& gp, Side side, Point z,
                                       double r);

/// Group-space parameters paired with a function-space norm: B -> L with
/// s + d/2 - d/q; F variant 3 -> T with s + d/2; other F variants -> P with
/// s + d/2 - d/q and the given a.
GroupNormParams coorbit_params(const NormParams& np, int dim, double a);

/// Group norm of W_g f on the (homogeneous) ladder.
double coorbit_norm(const SampledSignal& f, const Kernel& g, const NormParams& np, double a,
                    const ScaleLadder& ladder);

}  // namespace besov
