// Copyright 2026 The gsdof Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GSDOF_REGIONS_HPP_
#define GSDOF_REGIONS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gsdof/common.hpp"
#include "gsdof/topology.hpp"

namespace gsdof {

inline constexpr double kRegionTol = 1e-9;

struct Point {
  double d1 = 0.0;
  double d2 = 0.0;
};

inline bool near(const Point& a, const Point& b, double tol = kRegionTol) {
  return std::abs(a.d1 - b.d1) <= tol && std::abs(a.d2 - b.d2) <= tol;
}

// a1*d1 + a2*d2 <= b
struct HalfSpace {
  double a1 = 0.0;
  double a2 = 0.0;
  double b = 0.0;
  double eval(const Point& p) const { return a1 * p.d1 + a2 * p.d2 - b; }
};

// Intersection of half-spaces with d1 >= 0, d2 >= 0 always implied.
struct DofRegion {
  std::string name;
  std::vector<HalfSpace> constraints;
};

namespace detail {

inline std::vector<HalfSpace> with_axes(const DofRegion& r) {
  std::vector<HalfSpace> all = r.constraints;
  all.push_back({-1.0, 0.0, 0.0});
  all.push_back({0.0, -1.0, 0.0});
  return all;
}

inline bool feasible(const std::vector<HalfSpace>& hs, const Point& p, double tol) {
  for (const auto& h : hs) {
    const double scale = std::max({1.0, std::abs(h.a1), std::abs(h.a2)});
    if (h.eval(p) > tol * scale) return false;
  }
  return true;
}

// A nonzero direction r >= 0 with a.r <= 0 for every constraint means the
// polygon is open. In 2D such a cone is spanned by the axes and the
// constraint lines, so those candidates suffice.
inline bool unbounded(const std::vector<HalfSpace>& hs) {
  std::vector<Point> dirs{{1.0, 0.0}, {0.0, 1.0}};
  for (const auto& h : hs) {
    dirs.push_back({h.a2, -h.a1});
    dirs.push_back({-h.a2, h.a1});
  }
  for (auto d : dirs) {
    const double n = std::hypot(d.d1, d.d2);
    if (n < 1e-15) continue;
    d.d1 /= n;
    d.d2 /= n;
    if (d.d1 < -1e-12 || d.d2 < -1e-12) continue;
    bool ok = true;
    for (const auto& h : hs)
      if (h.a1 * d.d1 + h.a2 * d.d2 > 1e-12) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

inline void sort_ccw(std::vector<Point>& pts) {
  if (pts.size() < 2) return;
  Point c{0.0, 0.0};
  for (const auto& p : pts) {
    c.d1 += p.d1;
    c.d2 += p.d2;
  }
  c.d1 /= static_cast<double>(pts.size());
  c.d2 /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
    return std::atan2(a.d2 - c.d2, a.d1 - c.d1) < std::atan2(b.d2 - c.d2, b.d1 - c.d1);
  });
}

}  // namespace detail

inline std::vector<Point> vertices(const DofRegion& r) {
  const auto hs = detail::with_axes(r);
  if (detail::unbounded(hs)) throw Error("region '" + r.name + "' is unbounded");
  std::vector<Point> out;
  for (size_t i = 0; i < hs.size(); ++i) {
    for (size_t j = i + 1; j < hs.size(); ++j) {
      const double det = hs[i].a1 * hs[j].a2 - hs[i].a2 * hs[j].a1;
      if (std::abs(det) < 1e-14) continue;
      Point p{(hs[i].b * hs[j].a2 - hs[i].a2 * hs[j].b) / det,
              (hs[i].a1 * hs[j].b - hs[i].b * hs[j].a1) / det};
      if (!detail::feasible(hs, p, kRegionTol)) continue;
      if (std::any_of(out.begin(), out.end(), [&](const Point& q) { return near(p, q); })) continue;
      out.push_back(p);
    }
  }
  if (out.empty()) throw Error("region '" + r.name + "' is empty");
  detail::sort_ccw(out);
  return out;
}

inline bool contains(const DofRegion& r, const Point& p, double tol = kRegionTol) {
  return detail::feasible(detail::with_axes(r), p, tol);
}

// Valid because both sides are convex.
inline bool is_subset(const DofRegion& inner, const DofRegion& outer, double tol = kRegionTol) {
  for (const auto& v : vertices(inner))
    if (!contains(outer, v, tol)) return false;
  return true;
}

inline double sum_max(const DofRegion& r) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices(r)) best = std::max(best, v.d1 + v.d2);
  return best;
}

inline double d1_axis_max(const DofRegion& r) {
  double best = 0.0;
  for (const auto& v : vertices(r))
    if (std::abs(v.d2) <= kRegionTol) best = std::max(best, v.d1);
  return best;
}

inline double d2_axis_max(const DofRegion& r) {
  double best = 0.0;
  for (const auto& v : vertices(r))
    if (std::abs(v.d1) <= kRegionTol) best = std::max(best, v.d2);
  return best;
}

// Convex hull of a point set, written back as half-spaces. Handles the
// degenerate point and segment cases with paired opposite constraints.
inline DofRegion hull_of(std::vector<Point> pts, std::string name = "hull") {
  DofRegion r;
  r.name = std::move(name);
  std::vector<Point> uniq;
  for (const auto& p : pts)
    if (std::none_of(uniq.begin(), uniq.end(), [&](const Point& q) { return near(p, q); }))
      uniq.push_back(p);
  if (uniq.empty()) throw Error("hull of an empty point set");
  std::sort(uniq.begin(), uniq.end(), [](const Point& a, const Point& b) {
    return a.d1 < b.d1 || (a.d1 == b.d1 && a.d2 < b.d2);
  });
  auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a.d1 - o.d1) * (b.d2 - o.d2) - (a.d2 - o.d2) * (b.d1 - o.d1);
  };
  std::vector<Point> hull;
  if (uniq.size() >= 3) {
    std::vector<Point> h(2 * uniq.size());
    size_t k = 0;
    for (size_t i = 0; i < uniq.size(); ++i) {
      while (k >= 2 && cross(h[k - 2], h[k - 1], uniq[i]) <= 1e-12) --k;
      h[k++] = uniq[i];
    }
    for (size_t i = uniq.size() - 1, t = k + 1; i-- > 0;) {
      while (k >= t && cross(h[k - 2], h[k - 1], uniq[i]) <= 1e-12) --k;
      h[k++] = uniq[i];
    }
    h.resize(k - 1);
    hull = h;
  } else {
    hull = uniq;
  }
  auto add_line = [&](const Point& p, const Point& q) {
    // Outward normal of the CCW edge p->q.
    double n1 = q.d2 - p.d2, n2 = -(q.d1 - p.d1);
    const double len = std::hypot(n1, n2);
    n1 /= len;
    n2 /= len;
    r.constraints.push_back({n1, n2, n1 * p.d1 + n2 * p.d2});
  };
  if (hull.size() == 1) {
    const Point& p = hull[0];
    r.constraints = {{1, 0, p.d1}, {-1, 0, -p.d1}, {0, 1, p.d2}, {0, -1, -p.d2}};
  } else if (hull.size() == 2) {
    add_line(hull[0], hull[1]);
    add_line(hull[1], hull[0]);
    const double e1 = hull[1].d1 - hull[0].d1, e2 = hull[1].d2 - hull[0].d2;
    const double len = std::hypot(e1, e2);
    r.constraints.push_back({e1 / len, e2 / len, (e1 * hull[1].d1 + e2 * hull[1].d2) / len});
    r.constraints.push_back({-e1 / len, -e2 / len, -(e1 * hull[0].d1 + e2 * hull[0].d2) / len});
  } else {
    for (size_t i = 0; i < hull.size(); ++i) add_line(hull[i], hull[(i + 1) % hull.size()]);
  }
  return r;
}

inline DofRegion time_share(const std::vector<DofRegion>& regions) {
  std::vector<Point> pts;
  std::string name = "time_share(";
  for (size_t i = 0; i < regions.size(); ++i) {
    const auto v = vertices(regions[i]);
    pts.insert(pts.end(), v.begin(), v.end());
    name += (i ? "," : "") + regions[i].name;
  }
  return hull_of(std::move(pts), name + ")");
}

// ---- bound constructors ---------------------------------------------------

inline double wiretap_upper(const TopologyProfile& p) {
  p.validate();
  const double a = p.alpha;
  return ((3.0 - a) * p.lambda_1a + 2.0 * (p.lambda_11 + a * p.lambda_aa) + (1.0 + a) * p.lambda_a1) /
         3.0;
}

inline DofRegion bc_outer(const TopologyProfile& p) {
  p.validate();
  const double a = p.alpha;
  const double common = 2.0 * (p.lambda_11 + a * p.lambda_aa);
  const double b1 = (3.0 - a) * p.lambda_1a + common + (1.0 + a) * p.lambda_a1;
  const double b2 = (3.0 - a) * p.lambda_a1 + common + (1.0 + a) * p.lambda_1a;
  return {"outer", {{3.0, 1.0, b1}, {1.0, 3.0, b2}}};
}

inline void check_alpha(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw Error("alpha must lie in [0,1]");
}

// 3*d1 <= 2 is implied by the first row whenever alpha > 0 and closes the
// alpha = 0 limit, where the first two rows only pin d2 = 0.
inline DofRegion yang_inner(double a) {
  check_alpha(a);
  return {"yang", {{3.0 * a, 1.0, 2.0 * a}, {a, 3.0, 2.0 * a}, {3.0, 0.0, 2.0}}};
}

inline DofRegion prop2_inner(double a) {
  check_alpha(a);
  return {"prop2", {{3.0 * (1.0 + a), 2.0, 2.0 * (1.0 + a)}, {a * (3.0 - a), 6.0, 4.0 * a}}};
}

// The second row has a negative d1 coefficient below alpha = 1/2.
inline DofRegion sym_alt_inner(double a) {
  check_alpha(a);
  return {"sym_alt",
          {{6.0, 1.0 + a, 2.0 * (1.0 + a)}, {2.0 * (2.0 * a - 1.0), 3.0 * (1.0 + a), (1.0 + a) * (1.0 + a)}}};
}

inline DofRegion integer_sym_alt_inner(double a) {
  check_alpha(a);
  return {"int_sym_alt", {{3.0, a, (3.0 + a) / 2.0}, {a, 3.0, (3.0 + a) / 2.0}}};
}

inline DofRegion gdof_fixed(double a) {
  check_alpha(a);
  return {"gdof", {{1.0, 0.0, 1.0}, {0.0, 1.0, a}, {2.0, 1.0, 2.0}, {1.0, 2.0, 1.0 + a}}};
}

inline const std::vector<std::string>& bound_names() {
  static const std::vector<std::string> names{"outer", "yang", "prop2", "sym_alt", "int_sym_alt", "gdof"};
  return names;
}

// Dispatch by CLI name; only "outer" reads the profile.
inline DofRegion region_by_name(const std::string& name, const TopologyProfile& p) {
  if (name == "outer") return bc_outer(p);
  if (name == "yang") return yang_inner(p.alpha);
  if (name == "prop2") return prop2_inner(p.alpha);
  if (name == "sym_alt") return sym_alt_inner(p.alpha);
  if (name == "int_sym_alt") return integer_sym_alt_inner(p.alpha);
  if (name == "gdof") return gdof_fixed(p.alpha);
  throw Error("unknown bound '" + name + "'");
}

}  // namespace gsdof

#endif  // GSDOF_REGIONS_HPP_
