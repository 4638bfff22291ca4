#pragma once

#include <cstddef>
#include <vector>

#include "slag/curve.hpp"

namespace slag {

/// Which ray defines the multiplicity: the signed crossing count of the
/// vertical ray to p = -inf (Down) or, negated, to p = +inf (Up).  The two
/// agree whenever L and L0 are homologous.
enum class RayDirection { Down, Up };

struct BordismOptions {
  RayDirection direction = RayDirection::Down;
  double seam = 0.0;  // x at which the cylinder is cut open
};

/// Integer 2-chain C on the cylinder (or plane) with boundary L - L0,
/// stored as vertical strips between consecutive crossing/vertex abscissae.
/// Within a strip every curve piece is linear in x and the pieces are
/// ordered in p, so a cell is a trapezoid between two consecutive pieces.
class BordismChain {
 public:
  struct Strip {
    double x0, x1;
    std::vector<double> p0, p1;  // sorted piece values at x0 and x1
    std::vector<int> weight;     // signed contribution of each piece
    std::vector<int> multiplicity;  // cell above piece j (Down) / below (Up)
  };

  static BordismChain build(const GradedCurve& L, const GradedCurve& L0, const BordismOptions& opts = {});

  /// Multiplicity at (x, p); x is reduced onto the cut-open cylinder.
  int multiplicity(double x, double p) const;

  /// Integral of u * p over the chain, cell by cell (exact for polylines).
  double integral_p() const;
  /// Sum of |u| * area.
  double mass() const;
  /// Largest |p| over any cell with nonzero multiplicity.
  double max_abs_p() const;

  /// Largest mismatch between the multiplicity jump across a curve segment
  /// (read from the cell representation) and the signed count of raw
  /// segments of L minus L0 through that point.
  int boundary_defect() const;

  /// Signed crossing count of the vertical ray from (x, p), computed from
  /// the raw segments without the cell decomposition.
  int ray_count(double x, double p) const;

  const std::vector<Strip>& strips() const { return strips_; }
  const Ambient& ambient() const { return ambient_; }
  double x_begin() const { return x_begin_; }

 private:
  struct Segment2 {
    double xl, xr, pl, pr;
    int weight;  // +-1 orientation times +1 for L, -1 for L0
  };

  double reduce(double x) const;
  const Strip* find_strip(double x) const;
  std::vector<std::size_t> raw_candidates(double x) const;

  double span() const;

  Ambient ambient_;
  RayDirection direction_ = RayDirection::Down;
  double x_begin_ = 0.0;
  std::vector<Strip> strips_;
  std::vector<Segment2> pieces_;
  std::vector<std::vector<std::size_t>> buckets_;  // raw pieces by x bucket
};

}  // namespace slag
