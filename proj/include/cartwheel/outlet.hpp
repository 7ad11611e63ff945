#pragma once

// Outlets: the degree-d shadow of a discharging rule seen from the hub.
// An outlet is a nonzero value plus (position, lo, hi) entries; positioned at
// spoke x, entry p refers to axle position p (+)_d (x-1).

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "cartwheel/axle.hpp"

namespace cartwheel {

struct OutletEntry {
  int position = 0;
  int lo = kMinBound;
  int hi = kMaxBound;
  friend bool operator==(const OutletEntry&, const OutletEntry&) = default;
};

struct Outlet {
  int value = 1;
  std::vector<OutletEntry> entries;
  friend bool operator==(const Outlet&, const Outlet&) = default;
};

// Non-owning: the outlet must outlive the view.
struct PositionedOutlet {
  const Outlet* outlet = nullptr;
  int x = 1;
};

struct OutletViolation {
  std::string clause;  // "value", "T1".."T4" or "reduced"
  int entry = 0;
};

inline std::vector<OutletViolation> validate_outlet(const Outlet& t, int d) {
  std::vector<OutletViolation> out;
  if (t.value == 0) out.push_back({"value", -1});
  const auto& m = t.entries;
  for (int k = 0; k < static_cast<int>(m.size()); ++k) {
    const auto& e = m[k];
    if (e.position < 1 || e.position > 5 * d) {
      out.push_back({"T1", k});
      continue;
    }
    if (e.lo > e.hi) out.push_back({"T2", k});
    if (!is_lower_value(e.lo) || !is_upper_value(e.hi)) out.push_back({"T3", k});
    if (e.position > 2 * d) {
      const int j = band_layer(e.position, d);
      const int i = spoke_of(e.position, d);
      bool anchored = std::any_of(m.begin(), m.end(), [&](const OutletEntry& s) {
        return s.position == i && s.lo == s.hi && s.lo >= j + 4;
      });
      if (!anchored) out.push_back({"T4", k});
    }
    if (e.lo == kMinBound && e.hi == kMaxBound) out.push_back({"reduced", k});
    for (int k2 = 0; k2 < k; ++k2) {
      if (m[k2].position == e.position) {
        out.push_back({"reduced", k});
        break;
      }
    }
  }
  return out;
}

inline int shifted(int p, int x, int d) { return pos_add(p, x - 1, d); }

inline bool enforced(const Axle& a, const Outlet& t, int x) {
  const int d = a.degree();
  return std::all_of(t.entries.begin(), t.entries.end(), [&](const OutletEntry& e) {
    const int p = shifted(e.position, x, d);
    return e.lo <= a.lo(p) && a.hi(p) <= e.hi;
  });
}

inline bool permitted(const Axle& a, const Outlet& t, int x) {
  const int d = a.degree();
  return std::all_of(t.entries.begin(), t.entries.end(), [&](const OutletEntry& e) {
    const int p = shifted(e.position, x, d);
    return e.hi >= a.lo(p) && a.hi(p) >= e.lo;
  });
}

inline bool enforced(const Axle& a, const PositionedOutlet& po) { return enforced(a, *po.outlet, po.x); }
inline bool permitted(const Axle& a, const PositionedOutlet& po) { return permitted(a, *po.outlet, po.x); }

// Intersect the axle with the outlet's entries at the shifted positions.
// Empty when some interval empties, which happens exactly when (T,x) is not
// permitted.
inline std::optional<Axle> wedge(const Axle& a, const Outlet& t, int x) {
  const int d = a.degree();
  Axle out = a;
  for (const auto& e : t.entries) {
    const int p = shifted(e.position, x, d);
    const int lo = std::max(out.lo(p), e.lo);
    const int hi = std::min(out.hi(p), e.hi);
    if (lo > hi) return std::nullopt;
    out.set(p, {lo, hi});
  }
  CARTWHEEL_DEBUG_CHECK(is_valid_axle(out));
  return out;
}

inline std::optional<Axle> wedge(const Axle& a, const PositionedOutlet& po) {
  return wedge(a, *po.outlet, po.x);
}

inline Outlet outlet_from_axle(const Axle& b) {
  if (!is_fan_free(b)) throw std::invalid_argument("outlet_from_axle needs a fan-free axle");
  Outlet t;
  t.value = 1;
  for (int i = 1; i <= b.positions(); ++i) {
    if (!b[i].trivial()) t.entries.push_back({i, b.lo(i), b.hi(i)});
  }
  return t;
}

inline Axle axle_from_outlet(const Outlet& t, int d) {
  if (t.value != 1) throw std::invalid_argument("axle_from_outlet needs an outlet of value +1");
  for (const auto& v : validate_outlet(t, d)) {
    if (v.clause != "reduced") {
      throw std::invalid_argument("axle_from_outlet: outlet violates " + v.clause);
    }
  }
  Axle a = Axle::trivial(d);
  for (const auto& e : t.entries) {
    const int lo = std::max(a.lo(e.position), e.lo);
    const int hi = std::min(a.hi(e.position), e.hi);
    if (lo > hi) throw std::invalid_argument("axle_from_outlet: contradictory entries");
    a.set(e.position, {lo, hi});
  }
  CARTWHEEL_DEBUG_CHECK(is_valid_axle(a));
  return a;
}

inline std::string describe(const Outlet& t) {
  std::string out = (t.value > 0 ? "+" : "") + std::to_string(t.value);
  for (const auto& e : t.entries) {
    out += " " + std::to_string(e.position) + ":[" + std::to_string(e.lo) + "," +
           std::to_string(e.hi) + "]";
  }
  return out;
}

}  // namespace cartwheel
