// SPDX-License-Identifier: Apache-2.0
#include "vhtk/cube_complex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "vhtk/error.hpp"

namespace vh {

SignedMap SignedMap::identity(int dim) {
  SignedMap m;
  m.image.resize(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) m.image[static_cast<std::size_t>(k)] = {k, false};
  return m;
}

bool SignedMap::is_permutation() const {
  std::vector<bool> seen(image.size(), false);
  for (const auto& im : image) {
    if (im.axis < 0 || im.axis >= size() || seen[static_cast<std::size_t>(im.axis)]) return false;
    seen[static_cast<std::size_t>(im.axis)] = true;
  }
  return true;
}

SignedMap SignedMap::inverse() const {
  SignedMap inv;
  inv.image.resize(image.size());
  for (int k = 0; k < size(); ++k) {
    const auto& im = image[static_cast<std::size_t>(k)];
    inv.image[static_cast<std::size_t>(im.axis)] = {k, im.flip};
  }
  return inv;
}

SignedMap SignedMap::after(const SignedMap& first) const {
  SignedMap out;
  out.image.resize(first.image.size());
  for (std::size_t k = 0; k < first.image.size(); ++k) {
    const auto& mid = first.image[k];
    const auto& fin = image.at(static_cast<std::size_t>(mid.axis));
    out.image[k] = {fin.axis, mid.flip != fin.flip};
  }
  return out;
}

CubeMap CubeMap::identity(const CubeComplex& x) {
  CubeMap f;
  f.target.resize(x.size());
  f.axes.resize(x.size());
  for (CubeId c = 0; c < x.size(); ++c) {
    f.target[c] = c;
    f.axes[c] = SignedMap::identity(x.dim(c));
  }
  return f;
}

CubeId CubeComplex::add_cube(std::string name, int dim) {
  if (dim < 0) throw InvalidInput("cube '" + name + "' has negative dimension");
  if (by_name_.count(name)) throw InvalidInput("duplicate cube id '" + name + "'");
  const auto id = static_cast<CubeId>(cubes_.size());
  by_name_.emplace(name, id);
  Cube c;
  c.name = std::move(name);
  c.dim = dim;
  c.faces.resize(static_cast<std::size_t>(2 * dim));
  cubes_.push_back(std::move(c));
  return id;
}

void CubeComplex::set_face(CubeId cube, int axis, int side, CubeId target, SignedMap map) {
  auto& c = cubes_.at(cube);
  if (axis < 0 || axis >= c.dim || (side != 0 && side != 1))
    throw InvalidInput("face index out of range on cube '" + c.name + "'");
  c.faces[static_cast<std::size_t>(2 * axis + side)] = FaceRecord{target, std::move(map)};
}

std::optional<CubeId> CubeComplex::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

int CubeComplex::max_dim() const {
  int d = -1;
  for (const auto& c : cubes_) d = std::max(d, c.dim);
  return d;
}

std::vector<CubeId> CubeComplex::cubes_of_dim(int d) const {
  std::vector<CubeId> out;
  for (CubeId i = 0; i < cubes_.size(); ++i)
    if (cubes_[i].dim == d) out.push_back(i);
  return out;
}

namespace {

std::string face_path(const CubeComplex& x, CubeId c, int a1, int s1, int a2, int s2) {
  std::ostringstream os;
  os << x.name(c) << "(" << a1 + 1 << "," << s1 << ")(" << a2 + 1 << "," << s2 << ")";
  return os.str();
}

}  // namespace

ResolvedFace CubeComplex::resolve_ordered(CubeId cube, std::span<const std::int8_t> pattern,
                                          std::span<const int> order) const {
  const int d = dim(cube);
  std::vector<AxisImage> cur(static_cast<std::size_t>(d));
  std::vector<bool> alive(static_cast<std::size_t>(d), true);
  for (int a = 0; a < d; ++a) cur[static_cast<std::size_t>(a)] = {a, false};
  CubeId at = cube;
  for (int a : order) {
    const auto ua = static_cast<std::size_t>(a);
    if (pattern[ua] == kFree) continue;
    const int ax = cur[ua].axis;
    const int side = (pattern[ua] != 0) != cur[ua].flip ? 1 : 0;
    const FaceRecord& fr = face(at, ax, side);
    for (int b = 0; b < d; ++b) {
      const auto ub = static_cast<std::size_t>(b);
      if (!alive[ub] || b == a) continue;
      const int cb = cur[ub].axis;
      const int k = cb < ax ? cb : cb - 1;
      const auto& im = fr.map.image.at(static_cast<std::size_t>(k));
      cur[ub] = {im.axis, cur[ub].flip != im.flip};
    }
    alive[ua] = false;
    at = fr.target;
  }
  ResolvedFace out;
  out.cube = at;
  for (int a = 0; a < d; ++a)
    if (pattern[static_cast<std::size_t>(a)] == kFree) out.map.image.push_back(cur[static_cast<std::size_t>(a)]);
  return out;
}

ResolvedFace CubeComplex::resolve(CubeId cube, std::span<const std::int8_t> pattern) const {
  std::vector<int> order(static_cast<std::size_t>(dim(cube)));
  std::iota(order.begin(), order.end(), 0);
  return resolve_ordered(cube, pattern, order);
}

void CubeComplex::validate(const ValidationOptions& opts) const {
  for (CubeId c = 0; c < cubes_.size(); ++c) {
    const Cube& cb = cubes_[c];
    if (cb.dim > opts.max_dim)
      throw InvalidInput("cube '" + cb.name + "' exceeds the dimension limit " +
                         std::to_string(opts.max_dim));
    for (int a = 0; a < cb.dim; ++a) {
      for (int s = 0; s < 2; ++s) {
        const FaceRecord& fr = face(c, a, s);
        const std::string where =
            "cube '" + cb.name + "' face (" + std::to_string(a + 1) + "," + std::to_string(s) + ")";
        if (fr.target == kNoCube || fr.target >= cubes_.size())
          throw InvalidInput(where + ": missing or dangling face target");
        if (cubes_[fr.target].dim != cb.dim - 1)
          throw InvalidInput(where + ": face dimension mismatch");
        if (fr.map.size() != cb.dim - 1 || !fr.map.is_permutation())
          throw InvalidInput(where + ": perm is not a signed permutation of the remaining axes");
      }
    }
  }
  // Cubical identity: the two ways of reaching each codimension-two face agree.
  for (CubeId c = 0; c < cubes_.size(); ++c) {
    const int d = cubes_[c].dim;
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        for (int si = 0; si < 2; ++si) {
          for (int sj = 0; sj < 2; ++sj) {
            Pattern p(static_cast<std::size_t>(d), kFree);
            p[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(si);
            p[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(sj);
            const int ij[2] = {i, j};
            const int ji[2] = {j, i};
            const auto r1 = resolve_ordered(c, p, ij);
            const auto r2 = resolve_ordered(c, p, ji);
            if (!(r1 == r2))
              throw InvalidInput("cubical identity violated: " + face_path(*this, c, i, si, j, sj) +
                                 " reaches '" + name(r1.cube) + "' but " +
                                 face_path(*this, c, j, sj, i, si) + " reaches '" + name(r2.cube) +
                                 "'" + (r1.cube == r2.cube ? " with a different axis map" : ""));
          }
        }
      }
    }
  }
}

CubeComplex CubeComplex::from_json(const nlohmann::json& doc, const ValidationOptions& opts) {
  CubeComplex x;
  try {
    if (!doc.is_object() || !doc.contains("cubes")) throw InvalidInput("parse error: missing 'cubes'");
    for (const auto& jc : doc.at("cubes")) {
      const int d = jc.at("dim").get<int>();
      if (d > opts.max_dim)
        throw InvalidInput("cube '" + jc.at("id").get<std::string>() +
                           "' exceeds the dimension limit " + std::to_string(opts.max_dim));
      x.add_cube(jc.at("id").get<std::string>(), d);
    }
    if (doc.contains("faces")) {
      for (const auto& jf : doc.at("faces")) {
        const auto cname = jf.at("cube").get<std::string>();
        const auto tname = jf.at("target").get<std::string>();
        const auto cid = x.find(cname);
        if (!cid) throw InvalidInput("face record names unknown cube '" + cname + "'");
        const auto tid = x.find(tname);
        if (!tid) throw InvalidInput("dangling face target '" + tname + "' on cube '" + cname + "'");
        const int axis = jf.at("axis").get<int>() - 1;
        const int side = jf.at("side").get<int>();
        const auto perm = jf.value("perm", std::vector<int>{});
        const auto flips = jf.value("flips", std::vector<int>(perm.size(), 0));
        if (perm.size() != flips.size())
          throw InvalidInput("perm/flips length mismatch on cube '" + cname + "'");
        const int d = x.dim(*cid);
        if (axis < 0 || axis >= d || (side != 0 && side != 1))
          throw InvalidInput("face index out of range on cube '" + cname + "'");
        if (x.dim(*tid) != d - 1)
          throw InvalidInput("face (" + std::to_string(axis + 1) + "," + std::to_string(side) + ") of cube '" + cname +
                             "' targets '" + tname + "': face dimension mismatch");
        if (static_cast<int>(perm.size()) != d - 1)
          throw InvalidInput("perm on cube '" + cname + "' must have length dim-1");
        if (!x.cube(*cid).faces[static_cast<std::size_t>(2 * axis + side)].map.image.empty() ||
            x.cube(*cid).faces[static_cast<std::size_t>(2 * axis + side)].target != kNoCube)
          throw InvalidInput("duplicate face record on cube '" + cname + "'");
        SignedMap m;
        for (std::size_t k = 0; k < perm.size(); ++k) m.image.push_back({perm[k] - 1, flips[k] != 0});
        x.set_face(*cid, axis, side, *tid, std::move(m));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("parse error: ") + e.what());
  }
  x.validate(opts);
  return x;
}

nlohmann::json CubeComplex::to_json() const {
  nlohmann::json cubes = nlohmann::json::array();
  nlohmann::json faces = nlohmann::json::array();
  for (CubeId c = 0; c < cubes_.size(); ++c) {
    cubes.push_back({{"id", cubes_[c].name}, {"dim", cubes_[c].dim}});
    for (int a = 0; a < cubes_[c].dim; ++a) {
      for (int s = 0; s < 2; ++s) {
        const auto& fr = face(c, a, s);
        std::vector<int> perm, flips;
        for (const auto& im : fr.map.image) {
          perm.push_back(im.axis + 1);
          flips.push_back(im.flip ? 1 : 0);
        }
        faces.push_back({{"cube", cubes_[c].name},
                         {"axis", a + 1},
                         {"side", s},
                         {"target", fr.target == kNoCube ? std::string() : cubes_[fr.target].name},
                         {"perm", perm},
                         {"flips", flips}});
      }
    }
  }
  return {{"cubes", cubes}, {"faces", faces}};
}

std::string combinatorial_defect(const CubeComplex& y, const CubeComplex& x, const CubeMap& f) {
  if (f.target.size() != y.size() || f.axes.size() != y.size()) return "map size does not match source";
  for (CubeId c = 0; c < y.size(); ++c) {
    const CubeId fc = f.target[c];
    if (fc >= x.size()) return "cube '" + y.name(c) + "' maps outside the target";
    if (x.dim(fc) != y.dim(c)) return "cube '" + y.name(c) + "' maps to a cube of another dimension";
    if (f.axes[c].size() != y.dim(c) || !f.axes[c].is_permutation())
      return "cube '" + y.name(c) + "' has a malformed axis map";
  }
  for (CubeId c = 0; c < y.size(); ++c) {
    const int d = y.dim(c);
    const CubeId fc = f.target[c];
    for (int a = 0; a < d; ++a) {
      for (int s = 0; s < 2; ++s) {
        const FaceRecord& yf = y.face(c, a, s);
        const AxisImage ia = f.axes[c].image[static_cast<std::size_t>(a)];
        const int xs = (s != 0) != ia.flip ? 1 : 0;
        const FaceRecord& xf = x.face(fc, ia.axis, xs);
        if (f.target[yf.target] != xf.target)
          return "face (" + std::to_string(a + 1) + "," + std::to_string(s) + ") of '" + y.name(c) +
                 "' is not sent to the corresponding face of '" + x.name(fc) + "'";
        for (int b = 0, k = 0; b < d; ++b) {
          if (b == a) continue;
          // route 1: face map in Y, then f on the face
          const AxisImage r1 = f.axes[yf.target].image[static_cast<std::size_t>(
              yf.map.image[static_cast<std::size_t>(k)].axis)];
          const bool r1flip = r1.flip != yf.map.image[static_cast<std::size_t>(k)].flip;
          // route 2: f on the cube, then face map in X
          const AxisImage ib = f.axes[c].image[static_cast<std::size_t>(b)];
          const int kx = ib.axis < ia.axis ? ib.axis : ib.axis - 1;
          const AxisImage r2 = xf.map.image[static_cast<std::size_t>(kx)];
          const bool r2flip = r2.flip != ib.flip;
          if (r1.axis != r2.axis || r1flip != r2flip)
            return "axis maps disagree on face (" + std::to_string(a + 1) + "," + std::to_string(s) +
                   ") of '" + y.name(c) + "'";
          ++k;
        }
      }
    }
  }
  return {};
}

bool is_isomorphism(const CubeComplex& y, const CubeComplex& x, const CubeMap& f) {
  if (y.size() != x.size()) return false;
  if (!combinatorial_defect(y, x, f).empty()) return false;
  std::vector<bool> hit(x.size(), false);
  for (CubeId t : f.target) {
    if (hit[t]) return false;
    hit[t] = true;
  }
  return true;
}

Subcomplex extract_subcomplex(const CubeComplex& ambient, std::span<const CubeId> cubes) {
  Subcomplex out;
  out.local.assign(ambient.size(), kNoCube);
  std::vector<CubeId> sorted(cubes.begin(), cubes.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (CubeId c : sorted) out.local[c] = out.complex.add_cube(ambient.name(c), ambient.dim(c));
  for (CubeId c : sorted) {
    for (int a = 0; a < ambient.dim(c); ++a) {
      for (int s = 0; s < 2; ++s) {
        const auto& fr = ambient.face(c, a, s);
        if (out.local[fr.target] == kNoCube)
          throw InvalidInput("subcomplex is not closed under faces: '" + ambient.name(fr.target) +
                             "' missing below '" + ambient.name(c) + "'");
        out.complex.set_face(out.local[c], a, s, out.local[fr.target], fr.map);
      }
    }
    out.inclusion.target.push_back(c);
    out.inclusion.axes.push_back(SignedMap::identity(ambient.dim(c)));
  }
  return out;
}

CubeComplex disjoint_union(std::span<const CubeComplex* const> parts, std::span<const std::string> tags) {
  CubeComplex out;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const CubeComplex& x = *parts[p];
    const std::string prefix = p < tags.size() ? tags[p] + ":" : std::to_string(p) + ":";
    const auto base = static_cast<CubeId>(out.size());
    for (CubeId c = 0; c < x.size(); ++c) out.add_cube(prefix + x.name(c), x.dim(c));
    for (CubeId c = 0; c < x.size(); ++c)
      for (int a = 0; a < x.dim(c); ++a)
        for (int s = 0; s < 2; ++s) {
          const auto& fr = x.face(c, a, s);
          out.set_face(base + c, a, s, base + fr.target, fr.map);
        }
  }
  return out;
}

std::vector<Pattern> corner_patterns(int dim) {
  std::vector<Pattern> out;
  const std::size_t n = std::size_t{1} << dim;
  out.reserve(n);
  for (std::size_t bits = 0; bits < n; ++bits) {
    Pattern p(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a)
      p[static_cast<std::size_t>(a)] = static_cast<std::int8_t>((bits >> (dim - 1 - a)) & 1U);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace vh
