#include "cxtcat/disco.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cxtcat/io.hpp"
#include "cxtcat/monoidal.hpp"

namespace cxtcat {

using nlohmann::json;

std::string to_string(const ProtoType& t) {
  if (t.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ' ';
    s += t[i].label;
    if (t[i].order != 0) s += '^' + std::string(static_cast<std::size_t>(std::abs(t[i].order)), t[i].order > 0 ? 'r' : 'l');
  }
  return s;
}

ProtoType parse_type(const std::string& s) {
  ProtoType t;
  std::istringstream in(s);
  for (std::string tok; in >> tok;) {
    if (tok == "1") continue;
    BasicType b;
    auto caret = tok.find('^');
    b.label = tok.substr(0, caret);
    if (b.label.empty()) throw ParseError("empty basic type in '" + s + "'");
    if (caret != std::string::npos) {
      const std::string adj = tok.substr(caret + 1);
      if (adj.empty() || adj.find_first_not_of(adj[0]) != std::string::npos || (adj[0] != 'l' && adj[0] != 'r'))
        throw ParseError("bad adjoint marker in '" + tok + "'");
      b.order = static_cast<int>(adj.size()) * (adj[0] == 'r' ? 1 : -1);
    }
    t.push_back(std::move(b));
  }
  return t;
}

bool contracts(const BasicType& left, const BasicType& right) {
  return left.label == right.label && right.order == left.order + 1;
}

ProtoType concatenate(const std::vector<ProtoType>& types) {
  ProtoType out;
  for (const auto& t : types) out.insert(out.end(), t.begin(), t.end());
  return out;
}

ProtoType replay(const ProtoType& sequence, const ReductionWitness& w) {
  ProtoType cur = sequence;
  for (auto p : w.steps) {
    if (p + 1 >= cur.size() || !contracts(cur[p], cur[p + 1]))
      throw InvalidArgument("step at position " + std::to_string(p) + " is not a contraction");
    cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(p), cur.begin() + static_cast<std::ptrdiff_t>(p + 2));
  }
  return cur;
}

namespace {

struct Slot {
  BasicType type;
  std::size_t origin;
};

std::vector<Slot> slots_of(const ProtoType& seq) {
  std::vector<Slot> s;
  for (std::size_t i = 0; i < seq.size(); ++i) s.push_back({seq[i], i});
  return s;
}

ProtoType types_of(const std::vector<Slot>& s) {
  ProtoType t;
  for (const auto& x : s) t.push_back(x.type);
  return t;
}

}  // namespace

std::optional<ReductionWitness> reduce(const std::vector<ProtoType>& types, const ProtoType& target) {
  if (types.empty()) throw InvalidArgument("reduce needs at least one word");
  std::set<std::string> failed;
  ReductionWitness w;
  auto search = [&](auto&& self, std::vector<Slot>& cur) -> bool {
    const ProtoType t = types_of(cur);
    if (t == target) return true;
    if (cur.size() <= target.size()) return false;
    const std::string key = to_string(t);
    if (failed.count(key)) return false;
    for (std::size_t p = 0; p + 1 < cur.size(); ++p) {
      if (!contracts(cur[p].type, cur[p + 1].type)) continue;
      std::vector<Slot> next = cur;
      next.erase(next.begin() + static_cast<std::ptrdiff_t>(p), next.begin() + static_cast<std::ptrdiff_t>(p + 2));
      w.steps.push_back(p);
      w.pairs.emplace_back(cur[p].origin, cur[p + 1].origin);
      if (self(self, next)) return true;
      w.steps.pop_back();
      w.pairs.pop_back();
    }
    failed.insert(key);
    return false;
  };
  auto start = slots_of(concatenate(types));
  if (!search(search, start)) return std::nullopt;
  return w;
}

std::vector<ReductionWitness> all_reductions(const std::vector<ProtoType>& types, const ProtoType& target,
                                             std::size_t max_count) {
  std::vector<ReductionWitness> out;
  ReductionWitness w;
  auto search = [&](auto&& self, const std::vector<Slot>& cur) -> void {
    if (out.size() >= max_count) return;
    if (types_of(cur) == target) {
      out.push_back(w);
      return;
    }
    for (std::size_t p = 0; p + 1 < cur.size(); ++p) {
      if (!contracts(cur[p].type, cur[p + 1].type)) continue;
      std::vector<Slot> next = cur;
      next.erase(next.begin() + static_cast<std::ptrdiff_t>(p), next.begin() + static_cast<std::ptrdiff_t>(p + 2));
      w.steps.push_back(p);
      w.pairs.emplace_back(cur[p].origin, cur[p + 1].origin);
      self(self, next);
      w.steps.pop_back();
      w.pairs.pop_back();
    }
  };
  search(search, slots_of(concatenate(types)));
  return out;
}

// ---------------------------------------------------------------------------

std::size_t Factors::carrier() const {
  std::size_t n = 1;
  for (const auto& k : contexts) n *= k->num_objects();
  return n;
}

std::vector<std::size_t> Factors::decode(std::size_t flat) const {
  std::vector<std::size_t> c(contexts.size());
  for (std::size_t i = contexts.size(); i-- > 0;) {
    const auto n = contexts[i]->num_objects();
    c[i] = flat % n;
    flat /= n;
  }
  return c;
}

std::size_t Factors::encode(const std::vector<std::size_t>& coords) const {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < contexts.size(); ++i) flat = flat * contexts[i]->num_objects() + coords[i];
  return flat;
}

Bitset close_nary(const Factors& f, const Bitset& rel) {
  if (rel.size() != f.carrier()) throw DomainMismatch("relation does not match the factor carrier");
  Bitset cur = rel;
  const auto total = f.carrier();
  if (total == 0) return cur;
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t stride = total;
    for (const auto& k : f.contexts) {
      const auto n = k->num_objects();
      stride /= n;
      const auto block = n * stride;
      for (std::size_t outer = 0; outer < total; outer += block)
        for (std::size_t inner = 0; inner < stride; ++inner) {
          const auto base = outer + inner;
          Bitset slice(n);
          for (std::size_t i = 0; i < n; ++i)
            if (cur.test(base + i * stride)) slice.set(i);
          Bitset closed = k->close_objects(slice);
          if (closed == slice) continue;
          changed = true;
          closed.for_each([&](std::size_t i) { cur.set(base + i * stride); });
        }
    }
  }
  return cur;
}

bool is_closed_nary(const Factors& f, const Bitset& rel) { return close_nary(f, rel) == rel; }

Bitset tensor_states(const std::vector<Factors>& blocks, const std::vector<Bitset>& states) {
  if (blocks.size() != states.size()) throw InvalidArgument("one state per block expected");
  Factors all;
  Bitset cur(1);
  cur.set(0);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto c = blocks[b].carrier();
    if (states[b].size() != c) throw DomainMismatch("state does not match its factors");
    Bitset next(cur.size() * c);
    cur.for_each([&](std::size_t i) { states[b].for_each([&](std::size_t j) { next.set(i * c + j); }); });
    cur = std::move(next);
    all.contexts.insert(all.contexts.end(), blocks[b].contexts.begin(), blocks[b].contexts.end());
  }
  return close_nary(all, cur);
}

Bitset contract(const Factors& f, const Bitset& rel, std::size_t i, Factors* remaining) {
  if (i + 1 >= f.contexts.size()) throw InvalidArgument("contraction position out of range");
  const auto& a = *f.contexts[i];
  if (!(*dual_context(a) == *f.contexts[i + 1])) throw DomainMismatch("contracted factors are not dual to each other");
  Factors rest;
  for (std::size_t k = 0; k < f.contexts.size(); ++k)
    if (k != i && k != i + 1) rest.contexts.push_back(f.contexts[k]);
  Bitset out(rest.carrier());
  rel.for_each([&](std::size_t flat) {
    auto c = f.decode(flat);
    // Whether the left factor is K or K*, the pair is evaluated as (left I right) in the left factor.
    if (a.incident(c[i], c[i + 1])) return;
    c.erase(c.begin() + static_cast<std::ptrdiff_t>(i), c.begin() + static_cast<std::ptrdiff_t>(i + 2));
    out.set(rest.encode(c));
  });
  out = close_nary(rest, out);
  if (remaining) *remaining = std::move(rest);
  return out;
}

ContextMorphism cup(const ContextPtr& k) {
  auto kd = dual_context(*k);
  auto src = lattice_tensor(kd, k);
  BitMatrix bond(src->num_objects(), 1);
  for (std::size_t m = 0; m < k->num_attributes(); ++m)
    for (std::size_t g = 0; g < k->num_objects(); ++g)
      if (k->incident(g, m)) bond.set(m * k->num_objects() + g, 0);
  return from_bond(src, trivial_context(), std::move(bond));
}

ContextMorphism cup_right(const ContextPtr& k) {
  return compose(cup(k), symmetry(TensorKind::Lattice, k, dual_context(*k)));
}

// ---------------------------------------------------------------------------

Lexicon::Lexicon(std::map<std::string, ContextPtr> types, std::map<std::string, LexiconEntry> words)
    : types_(std::move(types)), words_(std::move(words)) {
  for (const auto& [w, e] : words_) {
    if (e.type.empty()) throw InvalidArgument("word '" + w + "' has the unit type");
    auto f = factors(e.type);
    if (e.state.size() != f.carrier()) throw InvalidArgument("state of '" + w + "' has the wrong size");
    if (!is_closed_nary(f, e.state)) throw InvalidArgument("state of '" + w + "' is not closed");
  }
}

const LexiconEntry& Lexicon::word(const std::string& w) const {
  auto it = words_.find(w);
  if (it == words_.end()) throw InvalidArgument("unknown word '" + w + "'");
  return it->second;
}

ContextPtr Lexicon::factor(const BasicType& b) const {
  auto it = types_.find(b.label);
  if (it == types_.end()) throw InvalidArgument("unbound basic type '" + b.label + "'");
  return b.order % 2 == 0 ? it->second : dual_context(*it->second);
}

Factors Lexicon::factors(const ProtoType& t) const {
  Factors f;
  for (const auto& b : t) f.contexts.push_back(factor(b));
  return f;
}

namespace {

ProtoType type_from_json(const json& j) {
  if (j.is_string()) return parse_type(j.get<std::string>());
  if (!j.is_array()) throw ParseError("word type must be a string or an array");
  ProtoType t;
  for (const auto& item : j) {
    if (item.is_string()) {
      t.push_back({item.get<std::string>(), 0});
    } else if (item.is_array() && item.size() == 2 && item[0].is_string() && item[1].is_number_integer()) {
      t.push_back({item[0].get<std::string>(), item[1].get<int>()});
    } else {
      throw ParseError("type entries are \"a\" or [\"a\", order]");
    }
  }
  return t;
}

std::size_t object_index(const FormalContext& k, const std::string& label) {
  auto i = k.object_index(label);
  if (!i) throw ParseError("'" + label + "' is not an object of " + k.name());
  return *i;
}

Bitset state_from_json(const json& j, const Factors& f) {
  Bitset rel(f.carrier());
  const auto& ext = j.at("extent");
  if (!ext.is_array()) throw ParseError("extent must be an array");
  for (const auto& item : ext) {
    std::vector<std::size_t> coords;
    if (item.is_string()) {
      if (f.contexts.size() != 1) throw ParseError("compound states list tuples of labels");
      coords.push_back(object_index(*f.contexts[0], item.get<std::string>()));
    } else if (item.is_array() && item.size() == f.contexts.size()) {
      for (std::size_t i = 0; i < item.size(); ++i) coords.push_back(object_index(*f.contexts[i], item[i].get<std::string>()));
    } else {
      throw ParseError("extent entry does not match the word's type");
    }
    rel.set(f.encode(coords));
  }
  return rel;
}

}  // namespace

Lexicon parse_lexicon(const json& j, const std::filesystem::path& base_dir) {
  try {
    std::map<std::string, ContextPtr> types;
    for (const auto& [label, path] : j.at("types").items()) types[label] = read_cxt(base_dir / path.get<std::string>());
    Lexicon shell(types, {});
    std::map<std::string, LexiconEntry> words;
    for (const auto& [w, entry] : j.at("words").items()) {
      LexiconEntry e;
      e.type = type_from_json(entry.at("type"));
      e.state = state_from_json(entry.at("state"), shell.factors(e.type));
      words.emplace(w, std::move(e));
    }
    return Lexicon(std::move(types), std::move(words));
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return parse_lexicon(j, path.parent_path());
}

std::vector<std::string> split_sentence(const std::string& sentence) {
  std::vector<std::string> words;
  std::istringstream in(sentence);
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

Interpretation interpret_with(const Lexicon& lex, const std::vector<std::string>& sentence, const ProtoType& target,
                              const ReductionWitness& witness, const std::vector<Bitset>& states) {
  if (sentence.size() != states.size()) throw InvalidArgument("one state per word expected");
  std::vector<ProtoType> types;
  std::vector<Factors> blocks;
  for (const auto& w : sentence) {
    types.push_back(lex.word(w).type);
    blocks.push_back(lex.factors(types.back()));
  }
  if (replay(concatenate(types), witness) != target)
    throw InvalidArgument("witness does not reduce the sentence to " + to_string(target));

  Interpretation out;
  out.witness = witness;
  out.factors = lex.factors(concatenate(types));
  out.relation = tensor_states(blocks, states);
  for (auto p : witness.steps) {
    Factors rest;
    out.relation = contract(out.factors, out.relation, p, &rest);
    out.factors = std::move(rest);
  }
  if (out.factors.contexts.size() == 1) {
    const auto& k = *out.factors.contexts[0];
    out.meaning = Concept{object_set(k, out.relation), attribute_set(k, k.intent_of(out.relation))};
  }
  return out;
}

Interpretation interpret(const Lexicon& lex, const std::vector<std::string>& sentence, const ProtoType& target) {
  std::vector<ProtoType> types;
  std::vector<Bitset> states;
  for (const auto& w : sentence) {
    types.push_back(lex.word(w).type);
    states.push_back(lex.word(w).state);
  }
  auto witness = reduce(types, target);
  if (!witness) throw PreconditionFailed("sentence does not reduce to " + to_string(target));
  return interpret_with(lex, sentence, target, *witness, states);
}

bool entails(const Concept& a, const Concept& b) { return a.extent.is_subset_of(b.extent); }

}  // namespace cxtcat
