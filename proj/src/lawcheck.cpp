#include "cxtcat/lawcheck.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <chrono>
#include <numeric>
#include <sstream>

#include "cxtcat/io.hpp"
#include "cxtcat/suplat.hpp"
#include "law_runner.hpp"

namespace cxtcat {

using nlohmann::json;

void GenConfig::validate(const Limits& limits) const {
  if (max_objects == 0 || max_attributes == 0 || max_lattice == 0 || trials == 0)
    throw InvalidArgument("generator sizes and trial count must be positive");
  if (max_objects > limits.max_size || max_attributes > limits.max_size || max_lattice > limits.max_size)
    throw InvalidArgument("generator sizes exceed the global cap of " + std::to_string(limits.max_size));
  if (!(density >= 0.0 && density <= 1.0)) throw InvalidArgument("density must lie in [0, 1]");
}

Generator::Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) { cfg_.validate(); }

std::size_t Generator::uniform(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

bool Generator::coin(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p;
}

Bitset Generator::subset(std::size_t n) {
  Bitset s(n);
  for (std::size_t i = 0; i < n; ++i)
    if (coin(0.5)) s.set(i);
  return s;
}

ContextPtr Generator::context() {
  const auto n = uniform(1, cfg_.max_objects);
  const auto m = uniform(1, cfg_.max_attributes);
  return context(n, m);
}

ContextPtr Generator::context(std::size_t objects, std::size_t attributes) {
  std::vector<std::string> g, m;
  for (std::size_t i = 0; i < objects; ++i) g.push_back("g" + std::to_string(i));
  for (std::size_t j = 0; j < attributes; ++j) m.push_back("m" + std::to_string(j));
  BitMatrix inc(objects, attributes);
  for (std::size_t i = 0; i < objects; ++i)
    for (std::size_t j = 0; j < attributes; ++j)
      if (coin(cfg_.density)) inc.set(i, j);
  return make_context("K", std::move(g), std::move(m), std::move(inc));
}

ContextMorphism Generator::morphism(const ContextPtr& k1, const ContextPtr& k2) {
  if (k1->num_objects() * k2->num_attributes() <= 12) {
    const auto key = std::make_pair(k1->fingerprint(), k2->fingerprint());
    auto it = hom_cache_.find(key);
    if (it == hom_cache_.end()) it = hom_cache_.emplace(key, enumerate_hom(k1, k2).morphisms).first;
    const auto& hom = it->second;
    // The extent relation is always closed, so hom sets are never empty.
    return hom[uniform(0, hom.size() - 1)];
  }
  BitMatrix b(k1->num_objects(), k2->num_attributes());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (coin(cfg_.density / 2)) b.set(i, j);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < b.rows(); ++i) {
      auto row = k2->close_attributes(b.row(i));
      if (row != b.row(i)) {
        b.row(i) = std::move(row);
        changed = true;
      }
    }
    for (std::size_t j = 0; j < b.cols(); ++j) {
      const auto col = b.column(j);
      const auto closed = k1->close_objects(col);
      if (closed != col) {
        closed.for_each([&](std::size_t i) { b.set(i, j); });
        changed = true;
      }
    }
  }
  return from_bond(k1, k2, std::move(b));
}

LatticePtr Generator::lattice() { return lattice(cfg_.max_lattice); }

LatticePtr Generator::lattice(std::size_t max_elements) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto n = uniform(1, 3);
    std::vector<Bitset> family{Bitset::full(n)};
    const auto extra = uniform(0, 4);
    for (std::size_t i = 0; i < extra; ++i) family.push_back(subset(n));
    bool grew = true;
    while (grew) {
      grew = false;
      const auto size = family.size();
      for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = i + 1; j < size; ++j) {
          auto s = family[i] & family[j];
          if (std::find(family.begin(), family.end(), s) == family.end()) {
            family.push_back(std::move(s));
            grew = true;
          }
        }
    }
    if (family.size() <= max_elements) return lattice_from_closure_system(family, "L");
  }
  return chain_lattice(std::min<std::size_t>(max_elements, 3));
}

SupMap Generator::supmap(const LatticePtr& v, const LatticePtr& w) {
  const auto key = std::make_pair(v->fingerprint(), w->fingerprint());
  auto it = sup_cache_.find(key);
  if (it == sup_cache_.end()) it = sup_cache_.emplace(key, enumerate_sup_maps(v, w)).first;
  const auto& maps = it->second;
  return maps[uniform(0, maps.size() - 1)];
}

ContextPtr gen_context(const GenConfig& cfg) { return Generator(cfg).context(cfg.max_objects, cfg.max_attributes); }

ContextMorphism gen_morphism(const GenConfig& cfg, const ContextPtr& k1, const ContextPtr& k2) {
  return Generator(cfg).morphism(k1, k2);
}

LatticePtr gen_lattice(const GenConfig& cfg) { return Generator(cfg).lattice(); }

SupMap gen_supmap(const GenConfig& cfg, const LatticePtr& v, const LatticePtr& w) { return Generator(cfg).supmap(v, w); }

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> numbered(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

std::vector<ContextPtr> small_contexts(std::size_t n, std::size_t m) {
  std::vector<ContextPtr> out;
  for (std::size_t rows = 0; rows <= n; ++rows)
    for (std::size_t cols = 0; cols <= m; ++cols) {
      std::vector<std::size_t> rp(rows), cp(cols);
      std::set<std::string> seen;
      const std::uint64_t total = std::uint64_t{1} << (rows * cols);
      for (std::uint64_t mask = 0; mask < total; ++mask) {
        BitMatrix inc(rows, cols);
        for (std::size_t c = 0; c < rows * cols; ++c)
          if (mask >> c & 1U) inc.set(c / cols, c % cols);
        // Canonical form: the least flattening over all row and column orders.
        std::string best;
        std::iota(rp.begin(), rp.end(), 0);
        do {
          std::iota(cp.begin(), cp.end(), 0);
          do {
            std::string s;
            for (auto i : rp)
              for (auto j : cp) s += inc.at(i, j) ? '1' : '0';
            if (best.empty() || s < best) best = s;
          } while (std::next_permutation(cp.begin(), cp.end()));
        } while (std::next_permutation(rp.begin(), rp.end()));
        if (!seen.insert(best).second) continue;
        out.push_back(make_context("K" + std::to_string(rows) + std::to_string(cols) + "_" + best, numbered("g", rows),
                                   numbered("m", cols), std::move(inc)));
      }
    }
  return out;
}

ContextPtr chain_context(std::size_t n) {
  BitMatrix leq(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) leq.set(i, j);
  return context_from_poset(numbered("c", n), leq, "C" + std::to_string(n));
}

ContextPtr animals_context() {
  static const ContextPtr k = parse_cxt(
      "B\nanimals\n4\n4\n\nCat\nDog\nKitten\nPuppy\nMature\nFeline\nCanine\nJuvenile\n"
      "XX..\nX.X.\n.X.X\n..XX\n");
  return k;
}

std::vector<ContextPtr> fixture_contexts() {
  BitMatrix k23(2, 3);
  k23.set(0, 0);
  k23.set(0, 1);
  k23.set(1, 1);
  k23.set(1, 2);
  return {trivial_context(),
          context_from_set({"a", "b"}, "S2"),
          context_from_set({"a", "b", "c"}, "S3"),
          chain_context(2),
          chain_context(3),
          make_context("K23", {"p", "q"}, {"x", "y", "z"}, k23),
          animals_context()};
}

std::vector<ContextPtr> box_fixture_contexts() {
  std::vector<ContextPtr> out;
  for (auto& k : fixture_contexts())
    if (k->num_objects() <= 3 && k->num_attributes() <= 3) out.push_back(k);
  return out;
}

std::vector<LatticePtr> fixture_lattices() {
  return {two_lattice(), chain_lattice(3), diamond_lattice(), chain_lattice(4), m3_lattice(), n5_lattice()};
}

std::vector<LatticePtr> closure_system_lattices(std::size_t n, std::size_t max_elements) {
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<Bitset> all;
  for (std::size_t s = 0; s < subsets; ++s) {
    Bitset b(n);
    for (std::size_t i = 0; i < n; ++i)
      if (s >> i & 1U) b.set(i);
    all.push_back(std::move(b));
  }
  // The full set is always present; choose any family of the others.
  const std::size_t others = subsets - 1;
  std::vector<LatticePtr> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others); ++mask) {
    std::vector<Bitset> family{all[subsets - 1]};
    for (std::size_t i = 0; i < others; ++i)
      if (mask >> i & 1U) family.push_back(all[i]);
    if (family.size() > max_elements) continue;
    bool closed = true;
    for (std::size_t i = 0; i < family.size() && closed; ++i)
      for (std::size_t j = i + 1; j < family.size() && closed; ++j)
        closed = std::find(family.begin(), family.end(), family[i] & family[j]) != family.end();
    if (closed) out.push_back(lattice_from_closure_system(family, "M" + std::to_string(mask)));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Bitset bitset_from_string(const std::string& s) {
  Bitset b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      b.set(i);
    else if (s[i] != '0')
      throw ParseError("bit strings use '0' and '1'");
  }
  return b;
}

template <class Ptr, class Same>
std::size_t position_of(const std::vector<Ptr>& pool, const Ptr& p, Same same) {
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (pool[i] == p) return i;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (same(pool[i], p)) return i;
  throw InvalidArgument("instance refers to an object that is not part of it");
}

}  // namespace

json Instance::to_json() const {
  json j;
  j["contexts"] = json::array();
  for (const auto& k : contexts) j["contexts"].push_back(context_to_json(*k));
  j["morphisms"] = json::array();
  for (const auto& f : morphisms)
    j["morphisms"].push_back(json{{"source", position_of(contexts, f.source(), same_context)},
                                  {"target", position_of(contexts, f.target(), same_context)},
                                  {"bond", matrix_to_json(f.bond())}});
  j["lattices"] = json::array();
  for (const auto& l : lattices) {
    auto e = lattice_to_json(*l);
    e["name"] = l->name();
    j["lattices"].push_back(std::move(e));
  }
  j["maps"] = json::array();
  for (const auto& f : maps)
    j["maps"].push_back(json{{"source", position_of(lattices, f.source, same_lattice)},
                             {"target", position_of(lattices, f.target, same_lattice)},
                             {"table", f.table}});
  j["sets"] = json::array();
  for (const auto& s : sets) j["sets"].push_back(s.to_string());
  j["words"] = words;
  return j;
}

Instance Instance::from_json(const json& j) {
  try {
    Instance inst;
    for (const auto& c : j.at("contexts")) inst.contexts.push_back(context_from_json(c));
    for (const auto& m : j.at("morphisms")) {
      const auto& src = inst.contexts.at(m.at("source").get<std::size_t>());
      const auto& tgt = inst.contexts.at(m.at("target").get<std::size_t>());
      inst.morphisms.emplace_back(src, tgt, matrix_from_json(m.at("bond"), tgt->num_attributes()));
    }
    for (const auto& l : j.at("lattices")) inst.lattices.push_back(lattice_from_json(l, l.value("name", "")));
    for (const auto& m : j.at("maps"))
      inst.maps.push_back(SupMap{inst.lattices.at(m.at("source").get<std::size_t>()),
                                 inst.lattices.at(m.at("target").get<std::size_t>()),
                                 m.at("table").get<std::vector<FiniteLattice::Index>>()});
    for (const auto& s : j.at("sets")) inst.sets.push_back(bitset_from_string(s.get<std::string>()));
    inst.words = j.at("words").get<std::vector<std::string>>();
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  } catch (const std::out_of_range& e) {
    throw ParseError(e.what());
  }
}

// ---------------------------------------------------------------------------

bool LawReport::ok() const { return total_failed() == 0; }

std::size_t LawReport::total_failed() const {
  std::size_t n = 0;
  for (const auto& l : laws) n += l.failed;
  return n;
}

const LawResult* LawReport::find(const std::string& law) const {
  for (const auto& l : laws)
    if (l.name == law) return &l;
  return nullptr;
}

json LawReport::to_json(bool with_duration) const {
  json j{{"suite", suite},
         {"config",
          {{"seed", config.seed},
           {"max_objects", config.max_objects},
           {"max_attributes", config.max_attributes},
           {"max_lattice", config.max_lattice},
           {"density", config.density},
           {"trials", config.trials}}},
         {"ok", ok()}};
  j["laws"] = json::array();
  for (const auto& l : laws) {
    json e{{"name", l.name}, {"passed", l.passed}, {"failed", l.failed}, {"skipped", l.skipped}};
    if (l.counterexample) e["counterexample"] = *l.counterexample;
    j["laws"].push_back(std::move(e));
  }
  j["skips"] = skips;
  if (with_duration) j["seconds"] = seconds;
  return j;
}

std::string LawReport::to_table() const {
  std::size_t width = 4;
  for (const auto& l : laws) width = std::max(width, l.name.size());
  std::ostringstream out;
  out << "suite " << suite << " (seed " << config.seed << ", trials " << config.trials << ")\n";
  out << std::string(width - 3, ' ') << "law  passed  failed  skipped\n";
  for (const auto& l : laws) {
    out << std::string(width - l.name.size(), ' ') << l.name;
    out << "  " << std::setw(6) << l.passed << "  " << std::setw(6) << l.failed << "  " << std::setw(7) << l.skipped
        << '\n';
  }
  for (const auto& s : skips) out << "skipped: " << s << '\n';
  for (const auto& l : laws)
    if (l.counterexample) out << "counterexample for " << l.name << ": " << l.counterexample->dump() << '\n';
  out << (ok() ? "all executed laws pass" : "FAILED") << " in " << seconds << " s\n";
  return out.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"context-core", "category", "monoidal-concept", "monoidal-lattice",
                                              "suplat",       "equivalence", "disco"};
  return names;
}

LawReport run_suite(const std::string& name, const GenConfig& cfg) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) throw InvalidArgument("unknown suite '" + name + "'");
  LawReport report;
  report.suite = name;
  report.config = cfg;
  Generator gen(cfg);
  detail::Runner runner(report, name);
  const auto start = std::chrono::steady_clock::now();
  if (name == "context-core")
    detail::suite_context_core(runner, gen);
  else if (name == "category")
    detail::suite_category(runner, gen);
  else if (name == "monoidal-concept")
    detail::suite_monoidal(runner, gen, false);
  else if (name == "monoidal-lattice")
    detail::suite_monoidal(runner, gen, true);
  else if (name == "suplat")
    detail::suite_suplat(runner, gen);
  else if (name == "equivalence")
    detail::suite_equivalence(runner, gen);
  else
    detail::suite_disco(runner, gen);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::optional<std::string> replay_counterexample(const json& counterexample) {
  const auto law = counterexample.at("law").get<std::string>();
  const auto& reg = detail::law_registry();
  auto it = reg.find(law);
  if (it == reg.end()) throw InvalidArgument("unknown law '" + law + "'");
  const auto inst = Instance::from_json(counterexample.at("instance"));
  try {
    return it->second(inst);
  } catch (const SizeCapExceeded&) {
    throw;
  } catch (const std::exception& e) {
    return std::string("exception: ") + e.what();
  }
}

Lexicon builtin_lexicon() {
  BitMatrix ne(2, 2);
  ne.set(0, 1);
  ne.set(1, 0);
  auto noun = make_context("noun", {"Alice", "Bob"}, {"not-Alice", "not-Bob"}, ne);
  auto sentence = make_context("sentence", {"yes", "no"}, {"not-yes", "not-no"}, ne);
  std::map<std::string, ContextPtr> types{{"n", noun}, {"s", sentence}};
  Lexicon shell(types, {});
  auto entry = [&](const std::string& type, const std::vector<std::vector<std::size_t>>& tuples) {
    LexiconEntry e;
    e.type = parse_type(type);
    const auto f = shell.factors(e.type);
    e.state = Bitset(f.carrier());
    for (const auto& t : tuples) e.state.set(f.encode(t));
    return e;
  };
  std::map<std::string, LexiconEntry> words;
  words.emplace("Alice", entry("n", {{0}}));
  words.emplace("Bob", entry("n", {{1}}));
  // (not-Alice, yes, not-Bob) and (not-Bob, no, not-Alice).
  words.emplace("likes", entry("n^r s n^l", {{0, 0, 1}, {1, 1, 0}}));
  return Lexicon(std::move(types), std::move(words));
}

// ---------------------------------------------------------------------------

namespace detail {

LawResult& Runner::slot(const std::string& law) {
  auto it = index_.find(law);
  if (it != index_.end()) return report_.laws[it->second];
  index_.emplace(law, report_.laws.size());
  LawResult fresh;
  fresh.name = law;
  report_.laws.push_back(std::move(fresh));
  return report_.laws.back();
}

void Runner::skip(const std::string& law, const std::string& why) {
  auto& s = slot(law);
  if (s.skipped++ == 0) report_.skips.push_back(law + ": " + why);
}

void Runner::run(const std::string& law, const Instance& inst) {
  const auto key = suite_ + "/" + law;
  const auto& reg = law_registry();
  auto it = reg.find(key);
  if (it == reg.end()) throw Error("no law registered as " + key);
  Outcome outcome;
  try {
    outcome = it->second(inst);
  } catch (const SizeCapExceeded& e) {
    skip(law, e.what());
    return;
  } catch (const std::exception& e) {
    outcome = std::string("exception: ") + e.what();
  }
  auto& s = slot(law);
  if (!outcome) {
    ++s.passed;
    return;
  }
  ++s.failed;
  json cx{{"law", key}, {"detail", *outcome}, {"instance", inst.to_json()}};
  if (!s.counterexample) {
    s.counterexample = std::move(cx);
    return;
  }
  const auto a = cx["instance"].dump(), b = (*s.counterexample)["instance"].dump();
  if (a.size() < b.size() || (a.size() == b.size() && a < b)) s.counterexample = std::move(cx);
}

}  // namespace detail

}  // namespace cxtcat
