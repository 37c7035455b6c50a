#include "gcolex/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gcolex/compiled.hpp"
#include "gcolex/stabilizer.hpp"

namespace gcolex {

std::string GroundSpaceReport::summary() const {
  return "degeneracy=" + std::to_string(orbit_count) + " valid=" + std::to_string(valid_count) + " method=" + method;
}

std::string GroundSpaceReport::to_json() const {
  nlohmann::json j{{"lattice", lattice},         {"group", group},         {"method", method},
                   {"valid_count", valid_count}, {"orbit_count", orbit_count}, {"degeneracy", orbit_count},
                   {"generators", generators},   {"gauge_fixed", gauge_fixed}};
  return j.dump(1) + "\n";
}

OrbitProblem color_code_problem(const Colex2& c, const FiniteGroup& g, const std::string& label) {
  StabilizerSet s = build_stabilizers(c, g);
  OrbitProblem p{label, g, c.num_vertices(), s.sz, {}, {}};
  auto gens = generating_set(g, Subgroup{[&] {
                                           std::vector<Elem> all(g.order());
                                           for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Elem>(i);
                                           return all;
                                         }(),
                                         std::vector<bool>(g.order(), true)});
  auto kgens = generating_set(g, s.commutator);
  for (std::uint32_t q = 0; q < c.plaquettes.size(); ++q) {
    if (c.plaquettes[q].color == Color::Red && !c.plaquettes[q].vertices.empty()) {
      GaugeFix fix{c.plaquettes[q].vertices.front(), {}};
      for (std::size_t x = 0; x < g.order(); ++x) {
        PermOp a = build_A(c, g, q, FiniteGroup::id);
        for (std::size_t h = 0; h < g.order(); ++h) {
          PermOp cand = build_A(c, g, q, static_cast<Elem>(h));
          if (cand.act(g, fix.pivot, static_cast<Elem>(x)) == FiniteGroup::id) a = cand;
        }
        fix.fix.push_back(a);
      }
      p.gauges.push_back(std::move(fix));
      continue;
    }
    for (Elem h : gens) p.generators.push_back(build_A(c, g, q, h));
  }
  for (std::uint32_t l = 0; l < c.red_links.size(); ++l)
    for (Elem n : kgens) p.generators.push_back(build_C(c, g, l, n));
  for (Site v : c.corner_c_sites)
    for (Elem n : kgens) p.generators.push_back(build_corner_C(c, v, n));
  return p;
}

namespace {

struct SiteMove {
  Site site;
  std::vector<Elem> map;
};

std::vector<SiteMove> lower(const FiniteGroup& g, const PermOp& op) {
  std::vector<SiteMove> out;
  for (const auto& a : op.actions()) {
    SiteMove m{a.site, std::vector<Elem>(g.order())};
    for (std::size_t x = 0; x < g.order(); ++x) m.map[x] = g.mul(g.mul(a.left, static_cast<Elem>(x)), g.inv(a.right));
    out.push_back(std::move(m));
  }
  return out;
}

class Enumerator {
 public:
  Enumerator(const OrbitProblem& p, bool use_gauges, std::uint64_t budget, std::atomic<std::uint64_t>& counter)
      : p_(p), g_(p.group), n_(p.group.order()), budget_(budget), counter_(counter) {
    preds_at_.resize(p.num_sites);
    for (std::size_t i = 0; i < p.predicates.size(); ++i) {
      const auto& f = p.predicates[i].factors;
      if (f.empty()) continue;
      Site last = 0;
      for (const auto& x : f) last = std::max(last, x.site);
      preds_at_[last].push_back(i);
    }
    pivot_.assign(p.num_sites, false);
    if (use_gauges)
      for (const auto& gf : p.gauges) pivot_[gf.pivot] = true;
    cfg_.assign(p.num_sites, 0);
  }

  // Assignments of the first depth sites passing every predicate complete within them.
  void prefixes(std::size_t depth, std::vector<Configuration>& out) {
    collect_ = &out;
    depth_ = depth;
    dfs(0, 0, nullptr);
    collect_ = nullptr;
  }

  void run_from(const Configuration& prefix, std::size_t depth, std::vector<std::uint64_t>& out) {
    std::uint64_t code = 0;
    for (std::size_t s = 0; s < depth; ++s) {
      cfg_[s] = prefix[s];
      code = code * n_ + prefix[s];
    }
    depth_ = p_.num_sites;
    dfs(depth, code, &out);
  }

 private:
  bool forced_value(Site s, Elem& value) const {
    for (auto i : preds_at_[s]) {
      const auto& pr = p_.predicates[i];
      if (std::count(pr.accept.begin(), pr.accept.end(), true) != 1 || !pr.accept[FiniteGroup::id]) continue;
      int hits = 0;
      for (const auto& f : pr.factors) hits += f.site == s;
      if (hits != 1) continue;
      Elem a = FiniteGroup::id, b = FiniteGroup::id;
      bool after = false;
      bool inverted = false;
      for (const auto& f : pr.factors) {
        if (f.site == s) {
          after = true;
          inverted = f.inverted;
          continue;
        }
        Elem x = f.inverted ? g_.inv(cfg_[f.site]) : cfg_[f.site];
        if (after)
          b = g_.mul(b, x);
        else
          a = g_.mul(a, x);
      }
      Elem f = g_.inv(g_.mul(b, a));
      value = inverted ? g_.inv(f) : f;
      return true;
    }
    return false;
  }

  bool passes(Site s) const {
    for (auto i : preds_at_[s])
      if (!p_.predicates[i].eval(g_, cfg_)) return false;
    return true;
  }

  void dfs(std::size_t s, std::uint64_t code, std::vector<std::uint64_t>* out) {
    if (s == depth_) {
      if (collect_) {
        collect_->emplace_back(cfg_.begin(), cfg_.begin() + static_cast<long>(s));
        return;
      }
      out->push_back(code);
      if (counter_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_)
        throw BudgetExceeded("valid-configuration count exceeds the state budget of " + std::to_string(budget_));
      return;
    }
    Site site = static_cast<Site>(s);
    Elem lo = 0, hi = static_cast<Elem>(n_ - 1);
    Elem forced;
    if (pivot_[site]) {
      hi = 0;
    } else if (forced_value(site, forced)) {
      lo = hi = forced;
    }
    for (int x = lo; x <= hi; ++x) {
      cfg_[site] = static_cast<Elem>(x);
      if (passes(site)) dfs(s + 1, code * n_ + static_cast<std::uint64_t>(x), out);
    }
  }

  const OrbitProblem& p_;
  const FiniteGroup& g_;
  std::size_t n_;
  std::uint64_t budget_;
  std::atomic<std::uint64_t>& counter_;
  std::vector<std::vector<std::size_t>> preds_at_;
  std::vector<bool> pivot_;
  Configuration cfg_;
  std::size_t depth_ = 0;
  std::vector<Configuration>* collect_ = nullptr;
};

class Canonicalizer {
 public:
  Canonicalizer(const OrbitProblem& p, bool use_gauges) : g_(p.group), n_(p.group.order()), V_(p.num_sites) {
    for (const auto& op : p.generators) gens_.push_back(lower(g_, op));
    if (!use_gauges)
      for (const auto& gf : p.gauges)
        for (const auto& op : gf.fix) gens_.push_back(lower(g_, op));
    if (use_gauges)
      for (const auto& gf : p.gauges) {
        std::vector<std::vector<SiteMove>> per_value;
        for (const auto& op : gf.fix) per_value.push_back(lower(g_, op));
        gauges_.push_back({gf.pivot, std::move(per_value)});
      }
  }

  std::size_t generators() const { return gens_.size(); }

  std::uint64_t image(std::uint64_t code, std::size_t k, Configuration& cfg) const {
    decode(code, cfg);
    for (const auto& m : gens_[k]) cfg[m.site] = m.map[cfg[m.site]];
    for (const auto& [pivot, per_value] : gauges_)
      for (const auto& m : per_value[cfg[pivot]]) cfg[m.site] = m.map[cfg[m.site]];
    std::uint64_t c = 0;
    for (Elem x : cfg) c = c * n_ + x;
    return c;
  }

 private:
  void decode(std::uint64_t code, Configuration& cfg) const {
    for (std::size_t i = V_; i-- > 0;) {
      cfg[i] = static_cast<Elem>(code % n_);
      code /= n_;
    }
  }

  const FiniteGroup& g_;
  std::size_t n_, V_;
  std::vector<std::vector<SiteMove>> gens_;
  std::vector<std::pair<Site, std::vector<std::vector<SiteMove>>>> gauges_;
};

void check_code_range(const OrbitProblem& p) {
  long double bits = p.num_sites * std::log2(static_cast<long double>(p.group.order()));
  if (bits >= 63.5L) throw BudgetExceeded("configuration codes do not fit in 64 bits");
}

template <class F>
void parallel_for(unsigned workers, std::size_t count, F&& f) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < count;) f(i);
        } catch (...) {
          errors[w] = std::current_exception();
          next = count;
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

ValidSet enumerate_valid(const OrbitProblem& p, const SpectrumOptions& opt) {
  check_code_range(p);
  ValidSet v;
  v.radix = p.group.order();
  v.num_sites = p.num_sites;
  if (opt.gauge_fix)
    for (std::size_t i = 0; i < p.gauges.size(); ++i) v.gauge_multiplicity *= p.group.order();
  std::atomic<std::uint64_t> counter{0};
  std::uint64_t code_budget = opt.budget_states;
  if (p.num_sites == 0) {
    v.codes.push_back(0);
    return v;
  }
  std::size_t depth = std::min<std::size_t>(p.num_sites, opt.workers > 1 ? 4 : 0);
  std::vector<Configuration> prefixes;
  {
    Enumerator e(p, opt.gauge_fix, code_budget, counter);
    e.prefixes(depth, prefixes);
  }
  std::vector<std::vector<std::uint64_t>> parts(prefixes.size());
  parallel_for(opt.workers, prefixes.size(), [&](std::size_t i) {
    Enumerator e(p, opt.gauge_fix, code_budget, counter);
    e.run_from(prefixes[i], depth, parts[i]);
  });
  std::size_t total = 0;
  for (const auto& part : parts) total += part.size();
  v.codes.reserve(total);
  for (auto& part : parts) {
    v.codes.insert(v.codes.end(), part.begin(), part.end());
    std::vector<std::uint64_t>().swap(part);
  }
  return v;
}

ValidSet enumerate_valid(const Colex2& c, const FiniteGroup& g, const SpectrumOptions& opt) {
  return enumerate_valid(color_code_problem(c, g), opt);
}

bool check_generator_closure(const OrbitProblem& p, const ValidSet& v) {
  Canonicalizer canon(p, v.gauge_multiplicity > 1);
  Configuration cfg(p.num_sites);
  for (auto code : v.codes)
    for (std::size_t k = 0; k < canon.generators(); ++k)
      if (!std::binary_search(v.codes.begin(), v.codes.end(), canon.image(code, k, cfg))) return false;
  return true;
}

GroundSpaceReport count_orbits(const OrbitProblem& p, const SpectrumOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  ValidSet v = enumerate_valid(p, opt);
  Canonicalizer canon(p, opt.gauge_fix);
  const std::size_t N = v.codes.size();
  if (N > UINT32_MAX) throw BudgetExceeded("valid set too large for 32-bit union-find");
  std::vector<std::uint32_t> parent(N);
  for (std::size_t i = 0; i < N; ++i) parent[i] = static_cast<std::uint32_t>(i);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  const std::size_t K = canon.generators();
  constexpr std::size_t kBlock = 1 << 16;
  std::vector<std::uint32_t> targets;
  for (std::size_t start = 0; start < N; start += kBlock) {
    std::size_t len = std::min(kBlock, N - start);
    targets.assign(len * K, 0);
    unsigned workers = std::max(1u, opt.workers);
    std::size_t slice = (len + workers - 1) / workers;
    parallel_for(workers, workers, [&](std::size_t w) {
      Configuration cfg(p.num_sites);
      for (std::size_t i = w * slice; i < std::min(len, (w + 1) * slice); ++i)
        for (std::size_t k = 0; k < K; ++k) {
          auto img = canon.image(v.codes[start + i], k, cfg);
          auto it = std::lower_bound(v.codes.begin(), v.codes.end(), img);
          if (it == v.codes.end() || *it != img) throw std::logic_error("a generator leaves the valid set");
          targets[i * K + k] = static_cast<std::uint32_t>(it - v.codes.begin());
        }
    });
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t k = 0; k < K; ++k) {
        auto a = find(static_cast<std::uint32_t>(start + i)), b = find(targets[i * K + k]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  }
  std::uint64_t orbits = 0;
  for (std::size_t i = 0; i < N; ++i) orbits += find(static_cast<std::uint32_t>(i)) == i;
  GroundSpaceReport r;
  r.lattice = p.label;
  r.group = p.group.name();
  r.method = "orbit";
  r.valid_count = v.valid_count();
  r.orbit_count = orbits;
  r.generators = K;
  r.gauge_fixed = opt.gauge_fix ? p.gauges.size() : 0;
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

GroundSpaceReport degeneracy(const Colex2& c, const FiniteGroup& g, const SpectrumOptions& opt) {
  return count_orbits(color_code_problem(c, g, boundary_name(c.boundary)), opt);
}

GroundSpaceReport degeneracy_rank_oracle(const Colex2& c, const FiniteGroup& g, std::uint64_t dimension_cap) {
  auto t0 = std::chrono::steady_clock::now();
  StabilizerSet s = build_stabilizers(c, g);
  std::vector<Site> all(c.num_vertices());
  for (Site i = 0; i < all.size(); ++i) all[i] = i;
  LocalSpace space(all, g.order());
  if (space.size() > dimension_cap)
    throw BudgetExceeded("rank oracle dimension " + std::to_string(space.size()) + " exceeds the cap");
  std::vector<OperatorAsSum> factors;
  for (std::uint32_t p = 0; p < c.plaquettes.size(); ++p)
    for (auto& f : s.dressed_factors(p)) factors.push_back(f);
  for (const auto& f : s.sc) factors.push_back(f);
  for (const auto& f : s.corner) factors.push_back(f);
  CompiledChain chain(factors, space, g);

  Accumulator acc(space.size());
  Configuration cfg(c.num_vertices());
  __int128 trace = 0;
  std::uint64_t valid = 0;
  for (std::uint64_t code = 0; code < space.size(); ++code) {
    space.decode(code, cfg);
    if (!std::all_of(s.sz.begin(), s.sz.end(), [&](const DiagPredicate& z) { return z.eval(g, cfg); })) continue;
    ++valid;
    auto out = chain.apply({{code, 1}}, acc);
    auto it = std::lower_bound(out.begin(), out.end(), std::make_pair(code, std::int64_t{INT64_MIN}));
    if (it != out.end() && it->first == code) trace += it->second;
  }
  if (trace % chain.denominator() != 0) throw std::logic_error("projector trace is not an integer");
  GroundSpaceReport r;
  r.lattice = boundary_name(c.boundary);
  r.group = g.name();
  r.method = "rank_oracle";
  r.valid_count = valid;
  r.orbit_count = static_cast<std::uint64_t>(trace / chain.denominator());
  r.generators = factors.size();
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace gcolex
