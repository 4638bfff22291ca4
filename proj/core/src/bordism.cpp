#include "slag/bordism.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "slag/error.hpp"

namespace slag {
namespace {

double lerp_at(double xl, double xr, double pl, double pr, double x) {
  if (x == xl) return pl;
  if (x == xr) return pr;
  return pl + (pr - pl) * (x - xl) / (xr - xl);
}

double square_integral(double w, double v0, double v1) { return w * (v0 * v0 + v0 * v1 + v1 * v1) / 3.0; }

int total_winding(const GradedCurve& c) {
  int w = 0;
  for (const auto& r : components(c)) w += winding_number(c, r.id);
  return w;
}

}  // namespace

double BordismChain::span() const {
  return ambient_.kind == AmbientKind::Cylinder ? ambient_.circumference : 0.0;
}

double BordismChain::reduce(double x) const {
  if (ambient_.kind != AmbientKind::Cylinder) return x;
  const double c = ambient_.circumference;
  double r = std::fmod(x - x_begin_, c);
  if (r < 0.0) r += c;
  if (r >= c * (1.0 - 1e-12)) r = 0.0;
  const double out = x_begin_ + r;
  return out >= x_begin_ + c ? x_begin_ : out;
}

BordismChain BordismChain::build(const GradedCurve& L, const GradedCurve& L0, const BordismOptions& opts) {
  if (!L.closed || !L0.closed) throw Error(ErrorCode::OpenCurve, "bordism needs closed curves");
  if (L.ambient.kind != L0.ambient.kind ||
      (L.ambient.kind == AmbientKind::Cylinder && L.ambient.circumference != L0.ambient.circumference)) {
    throw Error(ErrorCode::InvalidInput, "curves live in different ambients");
  }
  if (total_winding(L) != total_winding(L0)) {
    throw Error(ErrorCode::HomologyMismatch, "L and L0 wind differently around the cylinder");
  }
  BordismChain chain;
  chain.ambient_ = L.ambient;
  chain.direction_ = opts.direction;
  chain.x_begin_ = opts.seam;
  const bool cyl = L.ambient.kind == AmbientKind::Cylinder;
  const double c = chain.span();

  auto add_curve = [&](const GradedCurve& curve, int sign) {
    for (const auto& seg : segments(curve)) {
      const double dx = seg.dw.real();
      if (dx == 0.0) continue;
      const auto& a = curve.samples[seg.from];
      const auto& b = curve.samples[seg.to];
      const double ra = chain.reduce(a.x);
      const double rb = chain.reduce(b.x);
      const double x_end = chain.x_begin_ + c;
      auto push = [&](double xl, double xr, double pl, double pr, int w) {
        if (xr > xl) chain.pieces_.push_back({xl, xr, pl, pr, w});
      };
      // pieces always run left to right; reversed segments carry the opposite weight
      const int w = dx > 0.0 ? sign : -sign;
      const double xl = dx > 0.0 ? ra : rb, xr = dx > 0.0 ? rb : ra;
      const double pl = dx > 0.0 ? a.p : b.p, pr = dx > 0.0 ? b.p : a.p;
      if (!cyl || xr > xl) {
        push(xl, xr, pl, pr, w);
      } else if (xl + std::abs(dx) >= x_end - 1e-12 * c) {
        const double pm = pl + (pr - pl) * (x_end - xl) / std::abs(dx);
        push(xl, x_end, pl, pm, w);
        push(chain.x_begin_, xr, pm, pr, w);
      }
    }
  };
  add_curve(L, +1);
  add_curve(L0, -1);
  auto& pieces = chain.pieces_;
  for (const auto& s : pieces) {
    if (!std::isfinite(s.xl) || !std::isfinite(s.xr) || !std::isfinite(s.pl) || !std::isfinite(s.pr)) {
      throw Error(ErrorCode::DegenerateIntersection, "non-finite curve data");
    }
  }
  if (pieces.empty()) return chain;

  std::vector<double> breaks;
  breaks.reserve(2 * pieces.size() + 2);
  for (const auto& s : pieces) {
    breaks.push_back(s.xl);
    breaks.push_back(s.xr);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<std::size_t> order(pieces.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return pieces[i].xl < pieces[j].xl; });

  std::vector<std::size_t> active;
  std::size_t next = 0;
  std::vector<double> sub;
  std::vector<std::size_t> idx;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double X0 = breaks[b], X1 = breaks[b + 1];
    active.erase(std::remove_if(active.begin(), active.end(), [&](std::size_t i) { return pieces[i].xr <= X0; }),
                 active.end());
    while (next < order.size() && pieces[order[next]].xl <= X0) active.push_back(order[next++]);
    if (active.empty()) continue;

    // split the strip where two pieces cross
    sub.assign({X0, X1});
    for (std::size_t i = 0; i < active.size(); ++i) {
      const auto& si = pieces[active[i]];
      const double a0 = lerp_at(si.xl, si.xr, si.pl, si.pr, X0);
      const double a1 = lerp_at(si.xl, si.xr, si.pl, si.pr, X1);
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        const auto& sj = pieces[active[j]];
        const double d0 = a0 - lerp_at(sj.xl, sj.xr, sj.pl, sj.pr, X0);
        const double d1 = a1 - lerp_at(sj.xl, sj.xr, sj.pl, sj.pr, X1);
        if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
          const double xs = X0 + (X1 - X0) * d0 / (d0 - d1);
          if (xs > X0 && xs < X1) sub.push_back(xs);
        }
      }
    }
    std::sort(sub.begin(), sub.end());
    sub.erase(std::unique(sub.begin(), sub.end()), sub.end());

    for (std::size_t k = 0; k + 1 < sub.size(); ++k) {
      Strip st;
      st.x0 = sub[k];
      st.x1 = sub[k + 1];
      const double xm = 0.5 * (st.x0 + st.x1);
      idx.assign(active.begin(), active.end());
      std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        const auto& si = pieces[i];
        const auto& sj = pieces[j];
        return lerp_at(si.xl, si.xr, si.pl, si.pr, xm) < lerp_at(sj.xl, sj.xr, sj.pl, sj.pr, xm);
      });
      int cum = 0;
      for (std::size_t i : idx) {
        const auto& s = pieces[i];
        st.p0.push_back(lerp_at(s.xl, s.xr, s.pl, s.pr, st.x0));
        st.p1.push_back(lerp_at(s.xl, s.xr, s.pl, s.pr, st.x1));
        st.weight.push_back(s.weight);
        cum += s.weight;
        st.multiplicity.push_back(cum);
      }
      if (cum != 0) {
        throw Error(ErrorCode::HomologyMismatch,
                    "nonzero multiplicity above both curves near x = " + std::to_string(xm));
      }
      if (opts.direction == RayDirection::Up) {
        // cell above piece j: minus the count of pieces above it
        for (auto& m : st.multiplicity) m -= cum;
      }
      chain.strips_.push_back(std::move(st));
    }
  }

  const std::size_t nb = std::max<std::size_t>(1, pieces.size());
  const double lo = cyl ? chain.x_begin_ : breaks.front();
  const double width = cyl ? c : std::max(breaks.back() - breaks.front(), 1e-300);
  chain.buckets_.assign(nb, {});
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    auto b0 = static_cast<std::size_t>(std::clamp((pieces[i].xl - lo) / width * static_cast<double>(nb), 0.0,
                                                  static_cast<double>(nb - 1)));
    auto b1 = static_cast<std::size_t>(std::clamp((pieces[i].xr - lo) / width * static_cast<double>(nb), 0.0,
                                                  static_cast<double>(nb - 1)));
    for (std::size_t b = b0; b <= b1; ++b) chain.buckets_[b].push_back(i);
  }
  if (chain.boundary_defect() != 0) {
    throw Error(ErrorCode::DegenerateIntersection, "cell multiplicities disagree with the boundary");
  }
  return chain;
}

const BordismChain::Strip* BordismChain::find_strip(double x) const {
  const double xr = reduce(x);
  auto it = std::upper_bound(strips_.begin(), strips_.end(), xr,
                             [](double v, const Strip& s) { return v < s.x0; });
  if (it == strips_.begin()) return nullptr;
  --it;
  if (xr >= it->x1) return nullptr;
  return &*it;
}

int BordismChain::multiplicity(double x, double p) const {
  const Strip* st = find_strip(x);
  if (!st) return 0;
  const double xr = reduce(x);
  const double w = (xr - st->x0) / (st->x1 - st->x0);
  int u = 0;  // below every piece, for either ray once the chain closes up
  for (std::size_t j = 0; j < st->p0.size(); ++j) {
    const double v = (1.0 - w) * st->p0[j] + w * st->p1[j];
    if (v < p) u = st->multiplicity[j];
    else break;
  }
  return u;
}

std::vector<std::size_t> BordismChain::raw_candidates(double x) const {
  if (buckets_.empty()) return {};
  const bool cyl = ambient_.kind == AmbientKind::Cylinder;
  double lo = x_begin_, width = span();
  if (!cyl) {
    lo = INFINITY;
    double hi = -INFINITY;
    for (const auto& s : pieces_) {
      lo = std::min(lo, s.xl);
      hi = std::max(hi, s.xr);
    }
    width = std::max(hi - lo, 1e-300);
  }
  const std::size_t nb = buckets_.size();
  const auto b = static_cast<std::size_t>(
      std::clamp((reduce(x) - lo) / width * static_cast<double>(nb), 0.0, static_cast<double>(nb - 1)));
  return buckets_[b];
}

int BordismChain::ray_count(double x, double p) const {
  const double xr = reduce(x);
  int below = 0, above = 0;
  for (std::size_t i : raw_candidates(xr)) {
    const auto& s = pieces_[i];
    if (!(s.xl <= xr && xr < s.xr)) continue;
    const double v = lerp_at(s.xl, s.xr, s.pl, s.pr, xr);
    if (v < p) below += s.weight;
    else above += s.weight;
  }
  return direction_ == RayDirection::Down ? below : -above;
}

int BordismChain::boundary_defect() const {
  int worst = 0;
  for (const auto& s : pieces_) {
    const double xm = 0.5 * (s.xl + s.xr);
    if (!(s.xl <= xm && xm < s.xr)) continue;
    const double pm = lerp_at(s.xl, s.xr, s.pl, s.pr, xm);
    const double delta = 1e-9 * (1.0 + std::abs(pm));
    int expected = 0;
    for (std::size_t j : raw_candidates(xm)) {
      const auto& q = pieces_[j];
      if (!(q.xl <= xm && xm < q.xr)) continue;
      if (std::abs(lerp_at(q.xl, q.xr, q.pl, q.pr, xm) - pm) <= delta) expected += q.weight;
    }
    const int jump = multiplicity(xm, pm + 2.0 * delta) - multiplicity(xm, pm - 2.0 * delta);
    worst = std::max(worst, std::abs(jump - expected));
  }
  return worst;
}

double BordismChain::integral_p() const {
  double total = 0.0;
  for (const auto& st : strips_) {
    const double w = st.x1 - st.x0;
    for (std::size_t j = 0; j + 1 < st.p0.size(); ++j) {
      const int u = st.multiplicity[j];
      if (u == 0) continue;
      total += u * 0.5 * (square_integral(w, st.p0[j + 1], st.p1[j + 1]) - square_integral(w, st.p0[j], st.p1[j]));
    }
  }
  return total;
}

double BordismChain::mass() const {
  double total = 0.0;
  for (const auto& st : strips_) {
    const double w = st.x1 - st.x0;
    for (std::size_t j = 0; j + 1 < st.p0.size(); ++j) {
      const int u = st.multiplicity[j];
      if (u == 0) continue;
      total += std::abs(u) * 0.5 * w * ((st.p0[j + 1] - st.p0[j]) + (st.p1[j + 1] - st.p1[j]));
    }
  }
  return total;
}

double BordismChain::max_abs_p() const {
  double m = 0.0;
  for (const auto& st : strips_) {
    for (std::size_t j = 0; j + 1 < st.p0.size(); ++j) {
      if (st.multiplicity[j] == 0) continue;
      m = std::max({m, std::abs(st.p0[j]), std::abs(st.p1[j]), std::abs(st.p0[j + 1]), std::abs(st.p1[j + 1])});
    }
  }
  return m;
}

}  // namespace slag
