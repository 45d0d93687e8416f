// SPDX-License-Identifier: Apache-2.0
#include "vhtk/subdivision.hpp"

#include <algorithm>

#include "vhtk/error.hpp"

namespace vh {

int CellKey::dim() const {
  int d = 0;
  for (auto p : part) d += p != kMid ? 1 : 0;
  return d;
}

CellKey CellKey::uncut() const {
  CellKey k = *this;
  std::fill(k.side.begin(), k.side.end(), kNoSide);
  return k;
}

std::string cell_suffix(const CellKey& key) {
  std::string s;
  for (std::size_t a = 0; a < key.part.size(); ++a) {
    if (key.part[a] == kLow) s += 'l';
    else if (key.part[a] == kHigh) s += 'h';
    else if (key.side[a] == kNoSide) s += 'm';
    else s += key.side[a] != 0 ? '+' : '-';
  }
  return s;
}

CubeId CutComplex::find(const CellKey& key) const {
  auto it = index.find(key);
  return it == index.end() ? kNoCube : it->second;
}

std::optional<Pattern> CutComplex::parent_corner(CubeId cell) const {
  const CellKey& k = keys.at(cell);
  Pattern p(k.part.size());
  for (std::size_t a = 0; a < k.part.size(); ++a) {
    if (k.part[a] == kMid) {
      if (k.side[a] == kNoSide) return std::nullopt;
      p[a] = k.side[a];
    } else {
      p[a] = k.part[a];
    }
  }
  return p;
}

namespace {

struct FaceTarget {
  CellKey key;
  SignedMap map;
};

// Face of `k` along its cell axis `ax` (the parent axis `a`), side `s`.
FaceTarget cell_face(const CubeComplex& x, const CellKey& k, int a, int s, const MidcubePredicate& cut) {
  const auto ua = static_cast<std::size_t>(a);
  const bool inner = (k.part[ua] == kLow) == (s == 1);
  FaceTarget out;
  const int d = static_cast<int>(k.part.size());
  if (inner) {
    out.key = k;
    out.key.part[ua] = kMid;
    out.key.side[ua] = cut(k.parent, a) ? k.part[ua] : kNoSide;
    const int cd = k.dim();
    out.map = SignedMap::identity(cd - 1);
    return out;
  }
  const FaceRecord& fr = x.face(k.parent, a, k.part[ua] == kHigh ? 1 : 0);
  out.key.parent = fr.target;
  out.key.part.assign(static_cast<std::size_t>(d - 1), kMid);
  out.key.side.assign(static_cast<std::size_t>(d - 1), kNoSide);
  std::vector<AxisImage> where(static_cast<std::size_t>(d), AxisImage{-1, false});
  for (int b = 0, kk = 0; b < d; ++b) {
    if (b == a) continue;
    const auto ub = static_cast<std::size_t>(b);
    const AxisImage im = fr.map.image[static_cast<std::size_t>(kk++)];
    const auto ut = static_cast<std::size_t>(im.axis);
    std::int8_t p = k.part[ub];
    if (im.flip && p != kMid) p = static_cast<std::int8_t>(1 - p);
    out.key.part[ut] = p;
    if (k.side[ub] != kNoSide) out.key.side[ut] = static_cast<std::int8_t>(k.side[ub] ^ (im.flip ? 1 : 0));
    where[ub] = im;
  }
  // Cell axes are the non-mid parent axes in ascending order.
  std::vector<int> rank(static_cast<std::size_t>(d - 1), -1);
  for (int t = 0, r = 0; t < d - 1; ++t)
    if (out.key.part[static_cast<std::size_t>(t)] != kMid) rank[static_cast<std::size_t>(t)] = r++;
  for (int b = 0; b < d; ++b) {
    const auto ub = static_cast<std::size_t>(b);
    if (b == a || k.part[ub] == kMid) continue;
    out.map.image.push_back({rank[static_cast<std::size_t>(where[ub].axis)], where[ub].flip});
  }
  return out;
}

void enumerate_parts(int d, std::vector<std::vector<std::int8_t>>& out) {
  std::vector<std::int8_t> cur(static_cast<std::size_t>(d), kLow);
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (int i = d - 1; i >= 0; --i) {
      cur[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(c % 3);
      c /= 3;
    }
    out.push_back(cur);
  }
}

}  // namespace

CutComplex cut_subdivision(const CubeComplex& x, const MidcubePredicate& cut, const CellPredicate& keep) {
  CutComplex out;
  for (CubeId c = 0; c < x.size(); ++c) {
    const int d = x.dim(c);
    std::vector<std::vector<std::int8_t>> parts;
    enumerate_parts(d, parts);
    for (const auto& part : parts) {
      std::vector<int> cut_axes;
      for (int a = 0; a < d; ++a)
        if (part[static_cast<std::size_t>(a)] == kMid && cut(c, a)) cut_axes.push_back(a);
      const std::size_t combos = std::size_t{1} << cut_axes.size();
      for (std::size_t bits = 0; bits < combos; ++bits) {
        CellKey k;
        k.parent = c;
        k.part = part;
        k.side.assign(static_cast<std::size_t>(d), kNoSide);
        for (std::size_t i = 0; i < cut_axes.size(); ++i)
          k.side[static_cast<std::size_t>(cut_axes[i])] =
              static_cast<std::int8_t>((bits >> (cut_axes.size() - 1 - i)) & 1U);
        if (keep && !keep(k)) continue;
        const CubeId id = out.complex.add_cube(x.name(c) + "/" + cell_suffix(k), k.dim());
        out.index.emplace(k, id);
        out.keys.push_back(std::move(k));
      }
    }
  }
  for (CubeId id = 0; id < out.keys.size(); ++id) {
    const CellKey& k = out.keys[id];
    for (int a = 0, ax = 0; a < static_cast<int>(k.part.size()); ++a) {
      if (k.part[static_cast<std::size_t>(a)] == kMid) continue;
      for (int s = 0; s < 2; ++s) {
        FaceTarget ft = cell_face(x, k, a, s, cut);
        const CubeId t = out.find(ft.key);
        if (t == kNoCube)
          throw InvalidInput("cut_subdivision: kept cells are not closed under faces at '" +
                             out.complex.name(id) + "'");
        out.complex.set_face(id, ax, s, t, std::move(ft.map));
      }
      ++ax;
    }
  }
  out.complex.validate({.max_dim = std::max(8, x.max_dim())});
  return out;
}

Subdivision barycentric_subdivide(const CubeComplex& x) {
  Subdivision sd;
  static_cast<CutComplex&>(sd) = cut_subdivision(x, [](CubeId, int) { return false; });
  sd.barycenter.assign(x.size(), kNoCube);
  sd.per_parent.assign(x.size(), 0);
  for (CubeId id = 0; id < sd.keys.size(); ++id) {
    const CellKey& k = sd.keys[id];
    if (k.dim() == 0) sd.barycenter[k.parent] = id;
    if (k.dim() == x.dim(k.parent)) ++sd.per_parent[k.parent];
  }
  return sd;
}

CubeMap uncut_map(const CutComplex& cut, const Subdivision& sd) {
  CubeMap f;
  for (CubeId id = 0; id < cut.keys.size(); ++id) {
    const CubeId t = sd.find(cut.keys[id].uncut());
    VHTK_CHECK(t != kNoCube, "uncut cell missing from subdivision");
    f.target.push_back(t);
    f.axes.push_back(SignedMap::identity(cut.complex.dim(id)));
  }
  return f;
}

std::vector<CubeId> barycenter_spanned(const Subdivision& sd, const CubeComplex& x) {
  std::vector<bool> original(sd.complex.size(), false);
  for (CubeId v : x.vertices()) original[sd.barycenter[v]] = true;
  std::vector<CubeId> out;
  for (CubeId id = 0; id < sd.complex.size(); ++id) {
    const int d = sd.complex.dim(id);
    bool ok = true;
    for (const auto& rho : corner_patterns(d)) ok = ok && !original[sd.complex.corner(id, rho)];
    if (ok) out.push_back(id);
  }
  return out;
}

}  // namespace vh
