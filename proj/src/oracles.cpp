#include <algorithm>

#include "ppadtree/brouwer2d.hpp"
#include "ppadtree/error.hpp"
#include "ppadtree/parallel.hpp"

namespace ppad::b2d {

std::vector<std::pair<Rational, Rational>> sample_points(const std::pair<Rational, Rational>& p,
                                                         const ReductionParams& params) {
  const Rational one(1), d = params.delta();
  std::vector<std::pair<Rational, Rational>> out;
  Rational step(0);
  for (int i = 0; i < params.k; ++i) {
    // The circuit advances with +b, which saturates at 1.
    out.emplace_back(min(p.first + step, one), min(p.second + step, one));
    step += d;
  }
  return out;
}

bool poorly_positioned(const Rational& x, int n, const Rational& L) {
  const Rational side = Rational::pow2(n);
  std::int64_t a = (x * side).floor_int();
  if (a < 0 || a >= (std::int64_t{1} << n)) return false;
  return x - Rational(a) / side < Rational(1) / L;
}

int count_poorly_positioned(const std::pair<Rational, Rational>& p, const ReductionParams& params) {
  for (const Rational* c : {&p.first, &p.second})
    if (c->sign() < 0 || *c > Rational(1)) throw ValidationError("point outside [0, 1]^2");
  int count = 0;
  for (const auto& [x, y] : sample_points(p, params))
    if (poorly_positioned(x, params.n, params.L) || poorly_positioned(y, params.n, params.L)) ++count;
  return count;
}

std::array<std::pair<Rational, Rational>, 3> displacement_vectors(const ReductionParams& p) {
  const Rational e = p.eps, tail = (Rational(1) - p.R) * p.eps;
  return {std::make_pair(Rational(0), e), std::make_pair(e, tail), std::make_pair(-e, tail)};
}

namespace {

// min over lambda in [0,1] of |lambda u + (1-lambda) v|_inf. The objective is
// piecewise linear, so the minimum sits at an endpoint, a zero of one
// coordinate, or a point where the two coordinates have equal magnitude.
Rational segment_min(const std::pair<Rational, Rational>& u, const std::pair<Rational, Rational>& v) {
  // coordinate(lambda) = v + lambda (u - v)
  const Rational ax = u.first - v.first, bx = v.first;
  const Rational ay = u.second - v.second, by = v.second;
  std::vector<Rational> cand{Rational(0), Rational(1)};
  auto root = [&](const Rational& a, const Rational& b) {
    if (!a.is_zero()) cand.push_back(-b / a);
  };
  root(ax, bx);
  root(ay, by);
  root(ax - ay, bx - by);  // x = y
  root(ax + ay, bx + by);  // x = -y
  std::optional<Rational> best;
  for (const Rational& l : cand) {
    if (l.sign() < 0 || l > Rational(1)) continue;
    Rational val = max(abs(bx + l * ax), abs(by + l * ay));
    if (!best || val < *best) best = val;
  }
  return *best;
}

}  // namespace

GeometryReport displacement_geometry_check(const ReductionParams& p) {
  auto vs = displacement_vectors(p);
  GeometryReport rep;
  for (const auto& v : vs) rep.single.push_back(max(abs(v.first), abs(v.second)));
  rep.pair_min = {segment_min(vs[0], vs[1]), segment_min(vs[0], vs[2]), segment_min(vs[1], vs[2])};
  rep.minimum = rep.pair_min[0];
  for (const auto& m : rep.pair_min) rep.minimum = min(rep.minimum, m);
  return rep;
}

std::vector<GridPoint> grid_search(const circuit::SyncCircuit& circ, int resolution, int threads) {
  if (resolution < 1 || (resolution & (resolution - 1)) != 0)
    throw ValidationError("resolution must be a power of two");
  if (circ.num_inputs != 2 || circ.outputs.size() != 2)
    throw ValidationError("grid search needs a circuit with 2 inputs and 2 outputs");
  const std::size_t side = static_cast<std::size_t>(resolution) + 1;
  std::vector<GridPoint> pts(side * side);
  const Rational step = Rational(1) / Rational(resolution) * circ.bound;
  parallel_for(
      pts.size(), threads, [&] { return std::make_unique<circuit::Evaluator>(circ); },
      [&](std::unique_ptr<circuit::Evaluator>& ev, std::size_t idx) {
        Rational x = step * Rational(static_cast<long>(idx / side));
        Rational y = step * Rational(static_cast<long>(idx % side));
        auto img = (*ev)({x, y});
        Rational r = max(abs(x - img[0]), abs(y - img[1]));
        pts[idx] = GridPoint{std::move(x), std::move(y), std::move(r)};
      });
  std::stable_sort(pts.begin(), pts.end(), [](const GridPoint& a, const GridPoint& b) {
    if (a.residual != b.residual) return a.residual < b.residual;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  return pts;
}

}  // namespace ppad::b2d
