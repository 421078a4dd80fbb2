#include "sheafcore/simplify.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "sheafcore/error.hpp"
#include "sheafcore/linalg.hpp"

namespace sheafcore {

namespace {

bool downbeat_at(const SheavedSpace& sp, Poset::Index i) {
  return sp.poset().lower_covers(i).size() == 1;
}

bool upbeat_at(const SheavedSpace& sp, Poset::Index i) {
  const auto up = sp.poset().upper_covers(i);
  return up.size() == 1 && is_invertible(sp.sheaf().cover_map(i, up.front()));
}

SheavedSpace without(const SheavedSpace& sp, Poset::Index i) {
  std::vector<Poset::Index> keep;
  keep.reserve(sp.size());
  for (Poset::Index k = 0; k < sp.size(); ++k)
    if (k != i) keep.push_back(k);
  SheavedSpace out = restrict(sp, keep);
  if (auto r = check_commutativity(out.sheaf()); !r)
    throw IntegrityError("removing " + sp.poset().name(i) + " broke commutativity between " +
                         r.lower + " and " + r.upper);
  return out;
}

bool downset_acyclic(const Poset& p, Poset::Index s) {
  return is_acyclic(order_complex(downset(p, p.name(s))));
}

bool upset_acyclic(const Poset& p, Poset::Index s) {
  return is_acyclic(order_complex(upset(p, p.name(s))));
}

bool rule_applies(const SheavedSpace& sp, Poset::Index i, RemovalRule rule) {
  switch (rule) {
    case RemovalRule::downbeat:
      return downbeat_at(sp, i);
    case RemovalRule::upbeat:
      return upbeat_at(sp, i);
    case RemovalRule::acyclic_downset:
      return downset_acyclic(sp.poset(), i);
    case RemovalRule::acyclic_upset:
      return sp.sheaf().is_constant() && upset_acyclic(sp.poset(), i);
  }
  return false;
}

// Element indices sorted by name, or shuffled when a seed is set.
class Picker {
 public:
  explicit Picker(RemovalOrder order) {
    if (order.seed) rng_.emplace(*order.seed);
  }

  std::vector<Poset::Index> candidates(const Poset& p) {
    std::vector<Poset::Index> idx(p.size());
    for (Poset::Index i = 0; i < p.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](Poset::Index a, Poset::Index b) { return p.name(a) < p.name(b); });
    if (rng_) std::shuffle(idx.begin(), idx.end(), *rng_);
    return idx;
  }

 private:
  std::optional<std::mt19937_64> rng_;
};

// Memoised acyclicity verdicts keyed by name. Removing x can only change
// the downsets of elements above x and the upsets of elements below x.
class AcyclicityCache {
 public:
  bool down(const Poset& p, Poset::Index i) { return lookup(down_, p, i, downset_acyclic); }
  bool up(const Poset& p, Poset::Index i) { return lookup(up_, p, i, upset_acyclic); }

  void removing(const Poset& p, Poset::Index x) {
    for (Poset::Index k = 0; k < p.size(); ++k) {
      if (p.less(x, k)) down_.erase(p.name(k));
      if (p.less(k, x)) up_.erase(p.name(k));
    }
    down_.erase(p.name(x));
    up_.erase(p.name(x));
  }

 private:
  template <class Fn>
  bool lookup(std::map<std::string, bool>& cache, const Poset& p, Poset::Index i, Fn fn) {
    auto it = cache.find(p.name(i));
    if (it != cache.end()) return it->second;
    bool v = fn(p, i);
    cache.emplace(p.name(i), v);
    return v;
  }

  std::map<std::string, bool> down_, up_;
};

std::optional<SimplificationStep> next_beat(const SheavedSpace& sp, Picker& picker) {
  for (auto i : picker.candidates(sp.poset())) {
    if (downbeat_at(sp, i)) return SimplificationStep{sp.poset().name(i), RemovalRule::downbeat};
    if (upbeat_at(sp, i)) return SimplificationStep{sp.poset().name(i), RemovalRule::upbeat};
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(RemovalRule rule) {
  switch (rule) {
    case RemovalRule::downbeat:
      return "downbeat";
    case RemovalRule::upbeat:
      return "upbeat";
    case RemovalRule::acyclic_downset:
      return "acyclic-downset";
    case RemovalRule::acyclic_upset:
      return "acyclic-upset";
  }
  return "?";
}

std::optional<RemovalRule> parse_rule(std::string_view text) {
  for (auto r : {RemovalRule::downbeat, RemovalRule::upbeat, RemovalRule::acyclic_downset,
                 RemovalRule::acyclic_upset})
    if (to_string(r) == text) return r;
  return std::nullopt;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::beats_only:
      return "beats";
    case Strategy::beats_acyclic_down:
      return "acyclic-down";
    case Strategy::constant_updown:
      return "constant-updown";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  for (auto s : {Strategy::beats_only, Strategy::beats_acyclic_down, Strategy::constant_updown})
    if (to_string(s) == text) return s;
  return std::nullopt;
}

std::vector<BeatReport> find_beats(const SheavedSpace& sp) {
  const Poset& p = sp.poset();
  std::vector<BeatReport> out;
  for (Poset::Index i = 0; i < p.size(); ++i) {
    if (downbeat_at(sp, i))
      out.push_back({p.name(i), BeatKind::downbeat, p.name(p.lower_covers(i).front()), true});
    if (upbeat_at(sp, i))
      out.push_back({p.name(i), BeatKind::upbeat, p.name(p.upper_covers(i).front()), true});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const BeatReport& a, const BeatReport& b) { return a.element < b.element; });
  return out;
}

SheavedSpace collapse_beat(const SheavedSpace& sp, const std::string& v) {
  const auto i = sp.poset().index_of(v);
  if (!downbeat_at(sp, i) && !upbeat_at(sp, i))
    throw PreconditionError(v + " is not a beat; refusing an unverified removal");
  return without(sp, i);
}

std::pair<SheavedSpace, SimplificationTrace> core(const SheavedSpace& sp, RemovalOrder order) {
  return simplify_pipeline(sp, Strategy::beats_only, order);
}

bool removable_by_acyclic_downset(const SheavedSpace& sp, const std::string& s) {
  return downset_acyclic(sp.poset(), sp.poset().index_of(s));
}

SheavedSpace remove_acyclic_downset(const SheavedSpace& sp, const std::string& s) {
  if (!removable_by_acyclic_downset(sp, s))
    throw PreconditionError("the downset of " + s + " is not acyclic; refusing removal");
  return without(sp, sp.poset().index_of(s));
}

bool removable_by_acyclic_upset_constant(const Poset& p, const std::string& s) {
  const auto i = p.index_of(s);
  return downset_acyclic(p, i) || upset_acyclic(p, i);
}

std::pair<SheavedSpace, SimplificationTrace> simplify_pipeline(const SheavedSpace& sp,
                                                               Strategy strategy,
                                                               RemovalOrder order) {
  if (strategy == Strategy::constant_updown && !sp.sheaf().is_constant())
    throw PreconditionError("constant-updown simplification requires a constant sheaf");

  Picker picker(order);
  AcyclicityCache cache;
  SimplificationTrace trace;
  trace.initial = sp;
  SheavedSpace current = sp;

  auto next_acyclic = [&]() -> std::optional<SimplificationStep> {
    const Poset& p = current.poset();
    for (auto i : picker.candidates(p)) {
      if (cache.down(p, i)) return SimplificationStep{p.name(i), RemovalRule::acyclic_downset};
      if (strategy == Strategy::constant_updown && cache.up(p, i))
        return SimplificationStep{p.name(i), RemovalRule::acyclic_upset};
    }
    return std::nullopt;
  };

  auto apply = [&](SimplificationStep step) {
    const auto i = current.poset().index_of(step.removed);
    cache.removing(current.poset(), i);
    current = without(current, i);
    trace.steps.push_back(std::move(step));
  };

  // Tiers: beats to exhaustion, then acyclicity removals to exhaustion,
  // repeated until neither tier removes anything.
  while (true) {
    while (auto step = next_beat(current, picker)) apply(std::move(*step));
    if (strategy == Strategy::beats_only) break;
    bool removed = false;
    while (auto step = next_acyclic()) {
      apply(std::move(*step));
      removed = true;
    }
    if (!removed) break;
  }
  trace.final_space = current;
  verify_trace(trace);
  return {std::move(current), std::move(trace)};
}

void verify_trace(const SimplificationTrace& trace) {
  SheavedSpace space = trace.initial;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const auto& step = trace.steps[k];
    const auto i = space.poset().find(step.removed);
    if (!i)
      throw PreconditionError("trace step " + std::to_string(k) + " removes unknown element " +
                              step.removed);
    if (!rule_applies(space, *i, step.rule))
      throw PreconditionError("trace step " + std::to_string(k) + ": " + step.removed +
                              " is not removable as " + std::string(to_string(step.rule)));
    space = without(space, *i);
  }
  if (!(space == trace.final_space))
    throw PreconditionError("replaying the trace does not reproduce the final space");
}

}  // namespace sheafcore
