#pragma once

// Hubcaps and the bound procedure.
//
// A hubcap for an axle is a list of triples (x, y, v) covering every spoke
// exactly twice such that, for each triple, the net charge the rules can move
// across spokes x and y is at most v, and the v's sum small enough to leave
// the hub with non-positive charge. The per-triple bound is certified by a
// branch-and-bound over the positioned outlets at x and y.

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cartwheel/axle.hpp"
#include "cartwheel/errors.hpp"
#include "cartwheel/outlet.hpp"
#include "cartwheel/rules.hpp"

namespace cartwheel {

struct HubcapTriple {
  int x = 1;
  int y = 1;
  int v = 0;
  int multiplicity = 1;
};

struct Hubcap {
  std::vector<HubcapTriple> triples;
};

// Triples that share their spokes with nothing else are listed once but
// count twice. Multiplicities are inferred in place; returns a message when
// the spokes cannot be covered exactly twice.
inline std::optional<std::string> infer_multiplicities(Hubcap& h, int d) {
  std::vector<int> count(d + 1, 0);
  for (auto& t : h.triples) {
    if (t.x < 1 || t.x > d || t.y < 1 || t.y > d) {
      return "hubcap spoke outside 1.." + std::to_string(d);
    }
    t.multiplicity = 1;
    ++count[t.x];
    ++count[t.y];
  }
  for (auto& t : h.triples) {
    if (count[t.x] == 1 || count[t.y] == 1) t.multiplicity = 2;
  }
  std::fill(count.begin(), count.end(), 0);
  for (const auto& t : h.triples) {
    count[t.x] += t.multiplicity;
    count[t.y] += t.multiplicity;
  }
  for (int i = 1; i <= d; ++i) {
    if (count[i] != 2) {
      return "spoke " + std::to_string(i) + " is covered " + std::to_string(count[i]) + " times, not twice";
    }
  }
  return std::nullopt;
}

inline int floor_half(int s) { return s >= 0 ? s / 2 : -((1 - s) / 2); }

inline int hubcap_sum(const Hubcap& h) {
  int sum = 0;
  for (const auto& t : h.triples) sum += t.v * t.multiplicity;
  return sum;
}

inline bool check_h2(const Hubcap& h, int d) { return 10 * (6 - d) + floor_half(hubcap_sum(h)) <= 0; }

// ---------------------------------------------------------------------------

using Reducer = std::function<bool(const Axle&)>;

struct BoundContext {
  std::vector<PositionedOutlet> outlets;
  Reducer reducer;
};

// All positioned outlets of the table at x and at y (once when x == y), table
// order first, x before y.
inline BoundContext make_bound_context(const OutletTable& table, int x, int y, Reducer reducer) {
  BoundContext ctx;
  ctx.reducer = std::move(reducer);
  for (const auto& row : table) {
    ctx.outlets.push_back({&row.outlet, x});
    if (y != x) ctx.outlets.push_back({&row.outlet, y});
  }
  return ctx;
}

struct BoundResult {
  bool ok = true;
  std::string message;
  std::vector<int> trail;    // outlet indices branched on, root to failure
  std::optional<Axle> axle;  // the unresolved axle on failure
  int reducibility_checks = 0;
  int reducibility_successes = 0;
  int nodes = 0;
};

namespace detail {

inline int value_of(const BoundContext& ctx, int i) { return ctx.outlets[i].outlet->value; }

inline bool check_bound_step(const BoundContext& ctx, int p, std::vector<int> s, int v, const Axle& a,
                             std::vector<int>& trail, BoundResult& out) {
  const int n = static_cast<int>(ctx.outlets.size());
  ++out.nodes;
  // Every undecided outlet is classified, not only those from p on: an
  // outlet skipped earlier may have become enforced on this branch.
  for (int i = 0; i < n; ++i) {
    if (s[i] != 0) continue;
    if (enforced(a, ctx.outlets[i])) {
      s[i] = 1;
    } else if (!permitted(a, ctx.outlets[i])) {
      s[i] = -1;
    }
  }
  int f = 0, avail = 0;
  for (int i = 0; i < n; ++i) {
    CARTWHEEL_DEBUG_CHECK(s[i] != 1 || enforced(a, ctx.outlets[i]));
    if (s[i] == 1) f += value_of(ctx, i);
    if (s[i] == 0 && value_of(ctx, i) > 0) avail += value_of(ctx, i);
  }
  if (avail + f <= v) return true;
  if (f > v) {
    ++out.reducibility_checks;
    if (ctx.reducer && ctx.reducer(a)) {
      ++out.reducibility_successes;
      return true;
    }
    out.ok = false;
    out.axle = a;
    out.trail = trail;
    out.message = "enforced outlets sum to " + std::to_string(f) + " > " + std::to_string(v) +
                  " and the axle is not reducible";
    return false;
  }
  for (int q = p; q < n; ++q) {
    if (s[q] != 0 || value_of(ctx, q) <= 0) continue;
    const auto next = wedge(a, ctx.outlets[q]);
    CARTWHEEL_CHECK(next.has_value());
    bool excluded_returns = false;
    for (int i = 0; i < p && !excluded_returns; ++i) {
      excluded_returns = s[i] == -1 && enforced(*next, ctx.outlets[i]);
    }
    if (!excluded_returns) {
      std::vector<int> child = s;
      child[q] = 1;
      trail.push_back(q);
      const bool ok = check_bound_step(ctx, q, std::move(child), v, *next, trail, out);
      trail.pop_back();
      if (!ok) return false;
    }
    s[q] = -1;
    avail -= value_of(ctx, q);
    if (avail + f <= v) return true;
  }
  return true;
}

}  // namespace detail

// Certifies that every admissible choice of outlets moves at most v, unless
// the axle reached along the way is reducible.
inline BoundResult check_bound(const BoundContext& ctx, int v, const Axle& a) {
  BoundResult out;
  std::vector<int> trail;
  std::vector<int> s(ctx.outlets.size(), 0);
  detail::check_bound_step(ctx, 0, std::move(s), v, a, trail, out);
  return out;
}

struct TripleOutcome {
  HubcapTriple triple;
  BoundResult result;
};

struct HubcapResult {
  bool ok = true;
  std::string message;
  std::vector<TripleOutcome> triples;  // listed order
};

// Checks each listed triple (on up to `jobs` threads) and the sum condition.
// The hubcap's multiplicities must already be inferred.
inline HubcapResult check_hubcap(const Axle& a, const Hubcap& h, const OutletTable& table,
                                 const Reducer& reducer, int jobs = 1) {
  const int d = a.degree();
  HubcapResult out;
  const int n = static_cast<int>(h.triples.size());
  out.triples.resize(n);
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&]() {
    try {
      for (int k = next++; k < n; k = next++) {
        const auto& t = h.triples[k];
        const auto ctx = make_bound_context(table, t.x, t.y, reducer);
        out.triples[k] = {t, check_bound(ctx, t.v, a)};
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next = n;
    }
  };
  const int workers = std::max(1, std::min(jobs, n));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  for (const auto& o : out.triples) {
    if (!o.result.ok) {
      out.ok = false;
      out.message = "triple (" + std::to_string(o.triple.x) + " " + std::to_string(o.triple.y) + " " +
                    std::to_string(o.triple.v) + "): " + o.result.message;
      return out;
    }
  }
  if (!check_h2(h, d)) {
    out.ok = false;
    out.message = "hubcap values sum to " + std::to_string(hubcap_sum(h)) + ", too large for degree " +
                  std::to_string(d);
  }
  return out;
}

}  // namespace cartwheel
