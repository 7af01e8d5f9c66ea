#include "cxtcat/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cxtcat {

using nlohmann::json;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

std::size_t parse_count(const std::string& s, std::size_t line) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ParseError("expected a non-negative integer, got '" + s + "'", line);
  return v;
}

}  // namespace

ContextPtr parse_cxt(const std::string& text) {
  const auto lines = split_lines(text);
  auto at = [&](std::size_t i) -> const std::string& {
    if (i >= lines.size()) throw ParseError("unexpected end of file", i + 1);
    return lines[i];
  };
  if (at(0) != "B") throw ParseError("expected 'B'", 1);
  std::string name = at(1);
  const auto n = parse_count(at(2), 3);
  const auto m = parse_count(at(3), 4);
  if (!at(4).empty()) throw ParseError("expected an empty line", 5);
  std::size_t line = 5;
  std::vector<std::string> objects, attributes;
  for (std::size_t i = 0; i < n; ++i) objects.push_back(at(line++));
  for (std::size_t j = 0; j < m; ++j) attributes.push_back(at(line++));
  BitMatrix inc(n, m);
  for (std::size_t i = 0; i < n; ++i, ++line) {
    const auto& row = at(line);
    if (row.size() != m)
      throw ParseError("row has " + std::to_string(row.size()) + " cells, expected " + std::to_string(m), line + 1);
    for (std::size_t j = 0; j < m; ++j) {
      if (row[j] == 'X' || row[j] == 'x')
        inc.set(i, j);
      else if (row[j] != '.')
        throw ParseError(std::string("unexpected cell '") + row[j] + "'", line + 1);
    }
  }
  for (; line < lines.size(); ++line)
    if (!lines[line].empty()) throw ParseError("trailing content", line + 1);
  try {
    return make_context(std::move(name), std::move(objects), std::move(attributes), std::move(inc));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_cxt(const FormalContext& k) {
  std::string out = "B\n" + k.name() + "\n" + std::to_string(k.num_objects()) + "\n" +
                    std::to_string(k.num_attributes()) + "\n\n";
  for (const auto& g : k.objects()) out += g + "\n";
  for (const auto& m : k.attributes()) out += m + "\n";
  for (std::size_t g = 0; g < k.num_objects(); ++g) {
    for (std::size_t m = 0; m < k.num_attributes(); ++m) out += k.incident(g, m) ? 'X' : '.';
    out += '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ContextPtr read_cxt(const std::filesystem::path& path) { return parse_cxt(read_file(path)); }

void write_cxt(const std::filesystem::path& path, const FormalContext& k) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << serialize_cxt(k);
}

// ---------------------------------------------------------------------------

json matrix_to_json(const BitMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

BitMatrix matrix_from_json(const json& j, std::size_t cols) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  BitMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != cols) throw ParseError("matrix row " + std::to_string(i) + " has wrong width");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_boolean()) throw ParseError("matrix cells must be booleans");
      if (row[c].get<bool>()) m.set(i, c);
    }
  }
  return m;
}

json context_to_json(const FormalContext& k) {
  return json{{"name", k.name()},
              {"objects", k.objects()},
              {"attributes", k.attributes()},
              {"incidence", matrix_to_json(k.incidence())}};
}

ContextPtr context_from_json(const json& j) {
  try {
    auto objects = j.at("objects").get<std::vector<std::string>>();
    auto attributes = j.at("attributes").get<std::vector<std::string>>();
    auto inc = matrix_from_json(j.at("incidence"), attributes.size());
    if (inc.rows() != objects.size()) throw ParseError("incidence has the wrong number of rows");
    return make_context(j.value("name", ""), std::move(objects), std::move(attributes), std::move(inc));
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

json concept_lattice_to_json(const ConceptLattice& l) {
  const auto& k = *l.context();
  json concepts = json::array();
  for (std::size_t i = 0; i < l.size(); ++i)
    concepts.push_back(
        json{{"extent", labels_of(k.objects(), l.extent(i))}, {"intent", labels_of(k.attributes(), l.intent(i))}});
  return json{{"concepts", concepts}, {"leq", matrix_to_json(l.leq_matrix())}, {"bottom", l.bottom()}, {"top", l.top()}};
}

ConceptLatticePtr concept_lattice_from_json(const json& j, const ContextPtr& k) {
  try {
    std::vector<Bitset> extents;
    for (const auto& c : j.at("concepts")) {
      auto ext = object_set(*k, c.at("extent").get<std::vector<std::string>>());
      auto in = attribute_set(*k, c.at("intent").get<std::vector<std::string>>());
      if (k->intent_of(ext.bits()) != in.bits() || k->extent_of(in.bits()) != ext.bits())
        throw ParseError("entry is not a concept of the context");
      extents.push_back(ext.bits());
    }
    auto l = std::make_shared<const ConceptLattice>(k, extents);
    if (!(matrix_from_json(j.at("leq"), l->size()) == l->leq_matrix()) || j.at("bottom").get<std::size_t>() != l->bottom() ||
        j.at("top").get<std::size_t>() != l->top())
      throw ParseError("order data does not match the concepts");
    return l;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

namespace {

std::string join_labels(const std::vector<std::string>& labels) {
  std::string s;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) s += ", ";
    s += labels[i];
  }
  return s;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string concept_lattice_to_dot(const ConceptLattice& l) {
  const auto& k = *l.context();
  std::string out = "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < l.size(); ++i) {
    out += "  c" + std::to_string(i) + " [label=\"{" + dot_escape(join_labels(labels_of(k.objects(), l.extent(i)))) +
           "} | {" + dot_escape(join_labels(labels_of(k.attributes(), l.intent(i)))) + "}\"];\n";
  }
  for (auto [a, b] : l.covers()) out += "  c" + std::to_string(a) + " -> c" + std::to_string(b) + ";\n";
  return out + "}\n";
}

std::string concept_lattice_to_table(const ConceptLattice& l) {
  const auto& k = *l.context();
  std::string out = std::to_string(l.size()) + " concepts\n";
  for (std::size_t i = 0; i < l.size(); ++i)
    out += std::to_string(i) + "\t{" + join_labels(labels_of(k.objects(), l.extent(i))) + "}\t{" +
           join_labels(labels_of(k.attributes(), l.intent(i))) + "}\n";
  return out;
}

json lattice_to_json(const FiniteLattice& l) {
  return json{{"elements", l.labels()}, {"leq", matrix_to_json(l.leq_matrix())}, {"bottom", l.bottom()}, {"top", l.top()}};
}

LatticePtr lattice_from_json(const json& j, std::string name) {
  try {
    auto labels = j.at("elements").get<std::vector<std::string>>();
    auto leq = matrix_from_json(j.at("leq"), labels.size());
    auto l = make_lattice(std::move(name), std::move(labels), std::move(leq));
    if (j.contains("bottom") && j["bottom"].get<std::size_t>() != l->bottom()) throw ParseError("bottom mismatch");
    if (j.contains("top") && j["top"].get<std::size_t>() != l->top()) throw ParseError("top mismatch");
    return l;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

std::string hash_string(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json morphism_to_json(const ContextMorphism& f) {
  return json{{"source", hash_string(f.source()->fingerprint())},
              {"target", hash_string(f.target()->fingerprint())},
              {"bond", matrix_to_json(f.bond())}};
}

ContextMorphism morphism_from_json(const json& j, const ContextPtr& source, const ContextPtr& target) {
  try {
    if (j.at("source").get<std::string>() != hash_string(source->fingerprint()))
      throw DomainMismatch("morphism source hash does not match");
    if (j.at("target").get<std::string>() != hash_string(target->fingerprint()))
      throw DomainMismatch("morphism target hash does not match");
    auto bond = matrix_from_json(j.at("bond"), target->num_attributes());
    if (bond.rows() != source->num_objects()) throw ParseError("bond has the wrong number of rows");
    return from_bond(source, target, std::move(bond));
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

json supmap_to_json(const SupMap& f) {
  return json{{"source", hash_string(f.source->fingerprint())},
              {"target", hash_string(f.target->fingerprint())},
              {"table", f.table}};
}

SupMap supmap_from_json(const json& j, const LatticePtr& source, const LatticePtr& target) {
  try {
    if (j.at("source").get<std::string>() != hash_string(source->fingerprint()))
      throw DomainMismatch("map source hash does not match");
    if (j.at("target").get<std::string>() != hash_string(target->fingerprint()))
      throw DomainMismatch("map target hash does not match");
    SupMap f{source, target, j.at("table").get<std::vector<FiniteLattice::Index>>()};
    if (f.table.size() != source->size()) throw ParseError("table has the wrong length");
    for (auto y : f.table)
      if (y >= target->size()) throw ParseError("table value out of range");
    if (!is_sup_map(f)) throw InvalidArgument("table does not preserve joins");
    return f;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace cxtcat
