#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "lp.hpp"
#include "rational.hpp"

namespace dop {

struct Halfspace {
  Vec normal;
  Rat rhs;  // normal . x <= rhs
  bool operator==(const Halfspace& o) const {
    return normal == o.normal && rhs == o.rhs;
  }
};

struct Hyperplane {
  Vec normal;
  Rat rhs;  // normal . x == rhs
  bool operator==(const Hyperplane& o) const {
    return normal == o.normal && rhs == o.rhs;
  }
};

struct HPolytope {
  int dim = 0;
  std::vector<Halfspace> inequalities;
  std::vector<Hyperplane> equations;
  bool operator==(const HPolytope& o) const {
    return dim == o.dim && inequalities == o.inequalities &&
           equations == o.equations;
  }
};

struct VPolytope {
  int dim = 0;
  std::vector<Vec> vertices;
};

struct HullResult {
  HPolytope hrep;
  std::vector<int> vertex_indices;  // into the input point list
};

inline bool satisfies(const HPolytope& h, const Vec& x) {
  for (const auto& f : h.inequalities)
    if (dot(f.normal, x) > f.rhs) return false;
  for (const auto& e : h.equations)
    if (dot(e.normal, x) != e.rhs) return false;
  return true;
}

// Hull computations refuse to run above this ambient dimension; override
// with DOP_MAX_DIM when more is genuinely wanted.
inline int max_hull_dim() {
  static const int v = [] {
    const char* e = std::getenv("DOP_MAX_DIM");
    int parsed = e ? std::atoi(e) : 0;
    return parsed > 0 ? parsed : 10;
  }();
  return v;
}

namespace detail {

// Extreme rays of { z : rows[i] . z <= 0 }. The cone must be pointed, which
// holds for the polar-hull use below. Double description: start from a
// simplicial subcone given by d independent rows, insert the remaining rows
// one at a time, combining adjacent positive/negative ray pairs.
inline std::vector<Vec> dd_cone_rays(const std::vector<Vec>& rows, int d) {
  const int m = static_cast<int>(rows.size());
  std::vector<int> basis;
  Mat acc;
  for (int i = 0; i < m && static_cast<int>(basis.size()) < d; ++i) {
    acc.push_back(rows[i]);
    Mat probe = acc;
    if (static_cast<int>(rref(probe).size()) == static_cast<int>(acc.size()))
      basis.push_back(i);
    else
      acc.pop_back();
  }
  if (static_cast<int>(basis.size()) < d)
    throw std::logic_error("polar cone is not pointed");

  Mat hb(d, Vec(d));
  for (int j = 0; j < d; ++j) hb[j] = rows[basis[j]];
  auto inv = inverse(hb);
  if (!inv) throw std::logic_error("singular initial basis");

  std::vector<Vec> rays(d, Vec(d));
  std::vector<std::vector<int>> active(d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) rays[j][i] = -(*inv)[i][j];
    scale_primitive(rays[j]);
    for (int t = 0; t < d; ++t)
      if (t != j) active[j].push_back(basis[t]);
    std::sort(active[j].begin(), active[j].end());
  }

  std::vector<bool> in_basis(m, false);
  for (int i : basis) in_basis[i] = true;

  for (int t = 0; t < m; ++t) {
    if (in_basis[t]) continue;
    const Vec& h = rows[t];
    const int r = static_cast<int>(rays.size());
    std::vector<Rat> z(r);
    for (int v = 0; v < r; ++v) z[v] = dot(h, rays[v]);

    std::vector<Vec> next;
    std::vector<std::vector<int>> next_active;
    for (int v = 0; v < r; ++v) {
      if (z[v] > 0) continue;
      next.push_back(rays[v]);
      auto a = active[v];
      if (z[v] == 0) {
        a.insert(std::lower_bound(a.begin(), a.end(), t), t);
      }
      next_active.push_back(std::move(a));
    }
    for (int p = 0; p < r; ++p) {
      if (z[p] <= 0) continue;
      for (int q = 0; q < r; ++q) {
        if (z[q] >= 0) continue;
        std::vector<int> common;
        std::set_intersection(active[p].begin(), active[p].end(),
                              active[q].begin(), active[q].end(),
                              std::back_inserter(common));
        if (static_cast<int>(common.size()) < d - 2) continue;
        bool adjacent = true;
        for (int v = 0; v < r && adjacent; ++v) {
          if (v == p || v == q) continue;
          adjacent = !std::includes(active[v].begin(), active[v].end(),
                                    common.begin(), common.end());
        }
        if (!adjacent) continue;
        Vec w(d);
        for (int i = 0; i < d; ++i) w[i] = z[p] * rays[q][i] - z[q] * rays[p][i];
        scale_primitive(w);
        common.insert(std::lower_bound(common.begin(), common.end(), t), t);
        next.push_back(std::move(w));
        next_active.push_back(std::move(common));
      }
    }
    rays = std::move(next);
    active = std::move(next_active);
  }
  return rays;
}

}  // namespace detail

/*
 * Exact convex hull. Returns the facet inequalities, the equations cutting
 * out the affine hull, and the indices of the input points that are
 * vertices (first occurrence for duplicated points). Facets and equations
 * are primitively scaled and sorted, so equal polytopes produce identical
 * representations.
 *
 * Method: project onto the pivot coordinates of the affine hull, which is
 * injective on it, then dualize around the centroid and enumerate the rays
 * of the homogenized polar cone.
 */
inline HullResult convex_hull(int dim, const std::vector<Vec>& points) {
  if (points.empty()) throw EmptyInput("hull of no points");
  if (dim > max_hull_dim())
    throw DimensionTooLarge("ambient dimension exceeds the hull guard");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != dim)
      throw std::invalid_argument("point dimension mismatch");

  std::vector<int> first;  // unique point index -> original index
  std::vector<Vec> pts;
  {
    std::map<Vec, int, VecLess> seen;
    for (int i = 0; i < static_cast<int>(points.size()); ++i)
      if (seen.emplace(points[i], i).second) {
        first.push_back(i);
        pts.push_back(points[i]);
      }
  }
  const int np = static_cast<int>(pts.size());
  const Vec& base = pts[0];

  Mat diffs;
  for (const auto& p : pts) {
    Vec d(dim);
    for (int i = 0; i < dim; ++i) d[i] = p[i] - base[i];
    diffs.push_back(std::move(d));
  }
  Mat reduced = diffs;
  std::vector<int> pivots = rref(reduced);
  const int r = static_cast<int>(pivots.size());

  HullResult out;
  out.hrep.dim = dim;
  for (auto& a : nullspace(diffs, dim)) {
    scale_primitive_signed(a);
    Rat rhs = dot(a, base);
    out.hrep.equations.push_back({std::move(a), std::move(rhs)});
  }
  std::sort(out.hrep.equations.begin(), out.hrep.equations.end(),
            [](const Hyperplane& a, const Hyperplane& b) {
              return vec_less(a.normal, b.normal) ||
                     (a.normal == b.normal && a.rhs < b.rhs);
            });

  if (r == 0) {
    out.vertex_indices.push_back(first[0]);
    return out;
  }

  std::vector<Vec> local(np, Vec(r));
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < r; ++j) local[i][j] = diffs[i][pivots[j]];
  Vec centroid(r, 0);
  for (const auto& u : local)
    for (int j = 0; j < r; ++j) centroid[j] += u[j];
  for (int j = 0; j < r; ++j) centroid[j] /= np;

  std::vector<Vec> rows;
  for (const auto& u : local) {
    Vec row(r + 1);
    for (int j = 0; j < r; ++j) row[j] = u[j] - centroid[j];
    row[r] = -1;
    scale_primitive(row);
    rows.push_back(std::move(row));
  }
  {
    Vec row(r + 1, 0);
    row[r] = -1;
    rows.push_back(std::move(row));
  }

  for (const auto& ray : detail::dd_cone_rays(rows, r + 1)) {
    if (ray[r] <= 0) throw std::logic_error("polar ray at infinity");
    Vec normal(dim, 0);
    Rat local_rhs = 1;
    for (int j = 0; j < r; ++j) {
      Rat nj = ray[j] / ray[r];
      local_rhs += nj * centroid[j];
      normal[pivots[j]] = std::move(nj);
    }
    Rat rhs = local_rhs + dot(normal, base);
    Vec joint = normal;
    joint.push_back(rhs);
    scale_primitive(joint);
    rhs = joint.back();
    joint.pop_back();
    out.hrep.inequalities.push_back({std::move(joint), std::move(rhs)});
  }
  std::sort(out.hrep.inequalities.begin(), out.hrep.inequalities.end(),
            [](const Halfspace& a, const Halfspace& b) {
              return vec_less(a.normal, b.normal) ||
                     (a.normal == b.normal && a.rhs < b.rhs);
            });

  for (int i = 0; i < np; ++i) {
    Mat tight;
    for (const auto& f : out.hrep.inequalities)
      if (dot(f.normal, pts[i]) == f.rhs) tight.push_back(f.normal);
    for (const auto& e : out.hrep.equations) tight.push_back(e.normal);
    if (rank(tight) == dim) out.vertex_indices.push_back(first[i]);
  }
  std::sort(out.vertex_indices.begin(), out.vertex_indices.end());
  return out;
}

struct FaceDescriptor {
  Vec functional;
  Rat value;                        // max of functional over the points
  std::vector<int> vertex_indices;  // argmax positions in the input list
  int dimension = -1;               // affine dimension of the argmax set
};

// The zero functional is admitted: its argmax set is every point and the
// dimension is that of the whole point set.
inline FaceDescriptor face_of(const std::vector<Vec>& points, const Vec& l) {
  if (points.empty()) throw EmptyInput("face of no points");
  FaceDescriptor f;
  f.functional = l;
  f.value = dot(l, points[0]);
  for (const auto& p : points) f.value = std::max(f.value, dot(l, p));
  std::vector<Vec> arg;
  for (int i = 0; i < static_cast<int>(points.size()); ++i)
    if (dot(l, points[i]) == f.value) {
      f.vertex_indices.push_back(i);
      arg.push_back(points[i]);
    }
  f.dimension = affine_rank(arg);
  return f;
}

inline Rat max_over(const std::vector<Vec>& points, const Vec& l) {
  if (points.empty()) throw EmptyInput("max over no points");
  Rat best = dot(l, points[0]);
  for (const auto& p : points) best = std::max(best, dot(l, p));
  return best;
}

inline Rat min_over(const std::vector<Vec>& points, const Vec& l) {
  if (points.empty()) throw EmptyInput("min over no points");
  Rat best = dot(l, points[0]);
  for (const auto& p : points) best = std::min(best, dot(l, p));
  return best;
}

// Vertices of { a - b : a in conv A, b in conv B }, sorted.
inline std::vector<Vec> minkowski_difference_vertices(
    int dim, const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (a.empty() || b.empty()) throw EmptyInput("difference of empty sets");
  std::vector<Vec> cloud;
  for (const auto& p : a)
    for (const auto& q : b) {
      Vec d(dim);
      for (int i = 0; i < dim; ++i) d[i] = p[i] - q[i];
      cloud.push_back(std::move(d));
    }
  std::sort(cloud.begin(), cloud.end(), vec_less);
  cloud.erase(std::unique(cloud.begin(), cloud.end()), cloud.end());
  auto hull = convex_hull(dim, cloud);
  std::vector<Vec> out;
  for (int i : hull.vertex_indices) out.push_back(cloud[i]);
  return out;
}

// Every facet normal takes exactly two values on the vertex set. Polytopes
// without facets (points and their affine images) count as two-level.
inline bool is_two_level(int dim, const std::vector<Vec>& points) {
  auto hull = convex_hull(dim, points);
  for (const auto& f : hull.hrep.inequalities) {
    std::vector<Rat> values;
    for (int i : hull.vertex_indices) values.push_back(dot(f.normal, points[i]));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.size() != 2) return false;
  }
  return true;
}

inline HPolytope hull_facets(const VPolytope& v) {
  return convex_hull(v.dim, v.vertices).hrep;
}

inline FaceDescriptor face_of(const VPolytope& v, const Vec& l) {
  return face_of(v.vertices, l);
}

inline VPolytope minkowski_difference_vertices(const VPolytope& a,
                                               const VPolytope& b) {
  if (a.dim != b.dim) throw std::invalid_argument("ambient dimension mismatch");
  return {a.dim, minkowski_difference_vertices(a.dim, a.vertices, b.vertices)};
}

inline bool is_two_level(const VPolytope& v) {
  return is_two_level(v.dim, v.vertices);
}

inline Rat max_over(const VPolytope& v, const Vec& l) {
  return max_over(v.vertices, l);
}

struct Cone {
  int dim = 0;
  std::vector<Vec> generators;
};

inline Cone cone_from_generators(int dim, std::vector<Vec> gens) {
  return {dim, std::move(gens)};
}

inline int cone_dim(const Cone& c) {
  Mat m = c.generators;
  return rank(m);
}

inline bool contains(const Cone& c, const Vec& l) {
  if (is_zero_vec(l)) return true;
  if (c.generators.empty()) return false;
  const int m = static_cast<int>(c.generators.size());
  Mat a(c.dim, Vec(m));
  Vec b(c.dim);
  for (int i = 0; i < c.dim; ++i) {
    for (int j = 0; j < m; ++j) a[i][j] = c.generators[j][i];
    b[i] = l[i];
  }
  return lp_feasible(a, b);
}

// l lies in the relative interior iff it is a strictly positive combination
// of all generators. Substituting lambda = mu + eps turns that into an LP:
// maximize eps subject to sum mu_j g_j + eps * (sum g_j) = l, mu >= 0,
// eps + slack = 1. The empty cone {0} comes out right: eps stays free.
inline bool in_relint(const Cone& c, const Vec& l) {
  const int m = static_cast<int>(c.generators.size());
  Mat a(c.dim + 1, Vec(m + 2, 0));
  Vec b(c.dim + 1);
  for (int i = 0; i < c.dim; ++i) {
    for (int j = 0; j < m; ++j) a[i][j] = c.generators[j][i];
    for (int j = 0; j < m; ++j) a[i][m] += c.generators[j][i];
    b[i] = l[i];
  }
  a[c.dim][m] = 1;
  a[c.dim][m + 1] = 1;
  b[c.dim] = 1;
  Vec obj(m + 2, 0);
  obj[m] = 1;
  auto res = lp_max(a, b, obj);
  return res.status == LpStatus::optimal && res.value > 0;
}

}  // namespace dop
