#pragma once

// Axles: lower/upper degree bounds over the 5d positions of a cartwheel,
// the conditions that split them, and the rotation/reflection transforms.
//
// Position numbering for hub degree d:
//   0            hub
//   1 .. d       spokes, in order around the hub
//   d+1 .. 2d    hats; hat d+i sits between spokes i and i+1 (2d between d and 1)
//   jd+1 .. (j+1)d  for j = 2,3,4: the j-th fan layer; fan jd+i hangs off spoke i

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cartwheel/errors.hpp"

namespace cartwheel {

inline constexpr int kMinDegree = 5;
inline constexpr int kMaxDegree = 11;
inline constexpr int kMaxPosition = 5 * kMaxDegree;

// Degree values are capped: 12 stands for "12 or more".
inline constexpr int kMinBound = 5;
inline constexpr int kMaxBound = 12;

inline bool is_lower_value(int lo) { return lo >= 5 && lo <= 9; }
inline bool is_upper_value(int hi) { return (hi >= 5 && hi <= 8) || hi == 12; }

inline void require_degree(int d) {
  if (d < kMinDegree || d > kMaxDegree) {
    throw std::invalid_argument("hub degree " + std::to_string(d) + " outside " +
                                std::to_string(kMinDegree) + ".." + std::to_string(kMaxDegree));
  }
}

enum class Band { Hub, Spoke, Hat, Fan };

inline Band band_of(int n, int d) {
  if (n == 0) return Band::Hub;
  if (n <= d) return Band::Spoke;
  if (n <= 2 * d) return Band::Hat;
  return Band::Fan;
}

// 0-based offset of a position within its band; undefined for the hub.
inline int band_offset(int n, int d) { return (n - 1) % d; }

// Band index: 0 for spokes, 1 for hats, j for the j-th fan layer.
inline int band_layer(int n, int d) { return (n - 1) / d; }

// The spoke a position belongs to (spokes: itself; fans: the spoke they hang off).
inline int spoke_of(int n, int d) { return band_offset(n, d) + 1; }

// Hat positions on either side of spoke i.
inline int hat_after(int i, int d) { return d + i; }
inline int hat_before(int i, int d) { return i == 1 ? 2 * d : d + i - 1; }

// i (+)_d x: advance x steps inside the band of i, wrapping around.
inline int pos_add(int i, int x, int d) {
  return x + (i - 1) % d < d ? i + x : i + x - d;
}

struct Bounds {
  int lo = kMinBound;
  int hi = kMaxBound;

  bool trivial() const { return lo == kMinBound && hi == kMaxBound; }
  bool fixed() const { return lo == hi; }
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

// A violated well-formedness clause: "A1", "A2" or "A3" with the position.
struct AxleViolation {
  std::string clause;
  int index = 0;
  friend bool operator==(const AxleViolation&, const AxleViolation&) = default;
};

class Axle {
 public:
  // The trivial axle: every position (5,12), hub (d,d).
  static Axle trivial(int d) {
    require_degree(d);
    Axle a;
    a.degree_ = static_cast<std::int8_t>(d);
    a.lo_.fill(kMinBound);
    a.hi_.fill(kMaxBound);
    a.lo_[0] = a.hi_[0] = static_cast<std::int8_t>(d);
    return a;
  }

  int degree() const { return degree_; }
  int positions() const { return 5 * degree_; }

  int lo(int i) const { return lo_[i]; }
  int hi(int i) const { return hi_[i]; }
  Bounds operator[](int i) const { return {lo_[i], hi_[i]}; }

  // Unchecked single-entry replacement; callers validate.
  Axle with(int i, Bounds b) const {
    Axle out = *this;
    out.lo_[i] = static_cast<std::int8_t>(b.lo);
    out.hi_[i] = static_cast<std::int8_t>(b.hi);
    return out;
  }

  void set(int i, Bounds b) {
    lo_[i] = static_cast<std::int8_t>(b.lo);
    hi_[i] = static_cast<std::int8_t>(b.hi);
  }

  friend bool operator==(const Axle& a, const Axle& b) {
    if (a.degree_ != b.degree_) return false;
    for (int i = 0; i <= a.positions(); ++i) {
      if (a.lo_[i] != b.lo_[i] || a.hi_[i] != b.hi_[i]) return false;
    }
    return true;
  }

 private:
  Axle() = default;

  std::int8_t degree_ = 0;
  std::array<std::int8_t, kMaxPosition + 1> lo_{};
  std::array<std::int8_t, kMaxPosition + 1> hi_{};
};

inline std::vector<AxleViolation> validate_axle(const Axle& a) {
  std::vector<AxleViolation> out;
  const int d = a.degree();
  if (a.lo(0) != d || a.hi(0) != d) out.push_back({"hub", 0});
  for (int i = 1; i <= 5 * d; ++i) {
    if (a.lo(i) > a.hi(i)) out.push_back({"A1", i});
    if (!is_lower_value(a.lo(i)) || !is_upper_value(a.hi(i))) out.push_back({"A2", i});
  }
  for (int i = 1; i <= d; ++i) {
    if (a.lo(i) == a.hi(i)) continue;
    for (int j = 2; j <= 4; ++j) {
      if (!a[j * d + i].trivial()) out.push_back({"A3", i});
    }
  }
  return out;
}

inline bool is_valid_axle(const Axle& a) { return validate_axle(a).empty(); }

// (n, m) with m < 0 caps position n at -m, m > 0 raises it to at least m.
// (0, 0) is the null condition.
struct Condition {
  int n = 0;
  int m = 0;

  bool is_null() const { return n == 0 && m == 0; }
  friend bool operator==(const Condition&, const Condition&) = default;
};

inline bool is_condition_value(int m) { return (m >= -8 && m <= -5) || (m >= 6 && m <= 9); }

// A well-formed non-null condition for degree d. Hub conditions are rejected.
inline bool is_condition(const Condition& c, int d) {
  return c.n >= 1 && c.n <= 5 * d && is_condition_value(c.m);
}

inline Condition negate(const Condition& c) {
  if (c.is_null()) throw std::invalid_argument("cannot negate the null condition");
  return {c.n, 1 - c.m};
}

inline bool condition_compatible(const Axle& a, const Condition& c) {
  const int d = a.degree();
  if (!is_condition(c, d)) return false;
  const int n = c.n;
  if (c.m < 0) {
    if (!(a.lo(n) <= -c.m && -c.m < a.hi(n))) return false;
  } else {
    if (!(a.lo(n) < c.m && c.m <= a.hi(n))) return false;
  }
  if (n <= 2 * d) return true;
  const int j = band_layer(n, d);
  const int i = spoke_of(n, d);
  return a.lo(i) == a.hi(i) && a.lo(i) >= j + 4;
}

inline Axle wedge(const Axle& a, const Condition& c) {
  if (c.is_null()) throw std::invalid_argument("wedge with the null condition is undefined");
  if (!condition_compatible(a, c)) {
    throw std::invalid_argument("condition (" + std::to_string(c.n) + "," + std::to_string(c.m) +
                                ") is not compatible with the axle");
  }
  Axle out = c.m > 0 ? a.with(c.n, {c.m, a.hi(c.n)}) : a.with(c.n, {a.lo(c.n), -c.m});
  CARTWHEEL_DEBUG_CHECK(is_valid_axle(out));
  return out;
}

inline bool is_fan_free(const Axle& a) {
  const int d = a.degree();
  for (int i = 2 * d + 1; i <= 5 * d; ++i) {
    if (!a[i].trivial()) return false;
  }
  return true;
}

// Rotation by one unit; defined on fan-free axles.
inline Axle rotate(const Axle& a) {
  if (!is_fan_free(a)) throw std::invalid_argument("rotation needs a fan-free axle");
  const int d = a.degree();
  Axle out = Axle::trivial(d);
  for (int i = 1; i <= 2 * d; ++i) out.set(pos_add(i, 1, d), a[i]);
  return out;
}

// Index map of the reflection: spoke i <-> d+1-i, hat i <-> 3d-i, hat 2d fixed.
inline int reflect_position(int i, int d) {
  if (i == 0 || i >= 2 * d) return i;
  if (i <= d) return d + 1 - i;
  return 3 * d - i;
}

inline Axle reflect(const Axle& a) {
  if (!is_fan_free(a)) throw std::invalid_argument("reflection needs a fan-free axle");
  const int d = a.degree();
  Axle out = a;
  for (int i = 1; i < 2 * d; ++i) out.set(i, a[reflect_position(i, d)]);
  return out;
}

// Position digest used in trace output.
inline std::string axle_digest(const Axle& a) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](int byte) {
    h ^= static_cast<std::uint8_t>(byte);
    h *= 1099511628211ull;
  };
  mix(a.degree());
  for (int i = 1; i <= a.positions(); ++i) {
    mix(a.lo(i));
    mix(a.hi(i));
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k, h >>= 4) out[k] = kHex[h & 0xf];
  return out;
}

// Non-trivial entries only, e.g. "d7 1:[5,5] 9:[6,12]".
inline std::string describe(const Axle& a) {
  std::string out = "d" + std::to_string(a.degree());
  for (int i = 1; i <= a.positions(); ++i) {
    if (a[i].trivial()) continue;
    out += " " + std::to_string(i) + ":[" + std::to_string(a.lo(i)) + "," +
           std::to_string(a.hi(i)) + "]";
  }
  return out;
}

}  // namespace cartwheel
