#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cxtcat/concept_lattice.hpp"
#include "cxtcat/disco.hpp"
#include "cxtcat/errors.hpp"
#include "cxtcat/io.hpp"
#include "cxtcat/lawcheck.hpp"
#include "cxtcat/monoidal.hpp"

namespace fs = std::filesystem;
using namespace cxtcat;

namespace {

enum Exit { kOk = 0, kDomain = 1, kUsage = 2, kCap = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ContextPtr load(const std::string& path) {
  if (!fs::is_regular_file(path)) throw UsageError("no such file: " + path);
  return read_cxt(path);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

std::string labels(const std::vector<std::string>& names, const Bitset& s) {
  std::string out;
  s.for_each([&](std::size_t i) { out += (out.empty() ? "" : ", ") + names[i]; });
  return "{" + out + "}";
}

void check_factor(const FormalContext& k, std::size_t cap, const char* kind) {
  if (k.num_objects() > cap || k.num_attributes() > cap)
    throw SizeCapExceeded(std::string(kind) + " tensor accepts factors up to " + std::to_string(cap) + "x" +
                          std::to_string(cap) + "; " + k.name() + " is " + std::to_string(k.num_objects()) + "x" +
                          std::to_string(k.num_attributes()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal contexts, their tensors and the sup-lattice equivalence"};
  app.require_subcommand(1);

  std::string format = "table", file_a, file_b, out, kind = "concept";
  auto* concepts = app.add_subcommand("concepts", "List the concepts of a context");
  concepts->add_option("file", file_a, ".cxt file")->required();
  concepts->add_option("--format", format, "table, json or dot")->check(CLI::IsMember({"table", "json", "dot"}));

  auto* tens = app.add_subcommand("tensor", "Concept or lattice tensor of two contexts");
  tens->add_option("--kind", kind, "concept or lattice")->check(CLI::IsMember({"concept", "lattice"}));
  tens->add_option("a", file_a)->required();
  tens->add_option("b", file_b)->required();
  tens->add_option("-o,--output", out, "output .cxt (default stdout)");

  auto* dual = app.add_subcommand("dual", "Swap objects and attributes");
  dual->add_option("file", file_a)->required();
  dual->add_option("-o,--output", out, "output .cxt (default stdout)");

  bool count = false, list = false;
  auto* hom = app.add_subcommand("hom", "Morphisms between two contexts");
  hom->add_option("a", file_a)->required();
  hom->add_option("b", file_b)->required();
  auto* count_flag = hom->add_flag("--count", count, "print the number of morphisms");
  hom->add_flag("--list", list, "print every morphism as JSON")->excludes(count_flag);

  std::string suite = "all", replay;
  GenConfig cfg;
  auto* laws = app.add_subcommand("laws", "Run law suites");
  laws->add_option("--suite", suite, "suite name or all");
  laws->add_option("--seed", cfg.seed);
  laws->add_option("--trials", cfg.trials);
  laws->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));
  laws->add_option("--replay", replay, "re-run a counterexample JSON file");

  std::string lexicon, sentence, target = "s";
  auto* disco = app.add_subcommand("disco", "Interpret a sentence");
  disco->add_option("--lexicon", lexicon, "lexicon JSON (default: built-in Alice/likes/Bob)");
  disco->add_option("--sentence", sentence)->required();
  disco->add_option("--target", target, "target type");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*concepts) {
      auto l = concept_lattice(load(file_a));
      if (format == "json") {
        std::cout << nlohmann::json{{"count", l->size()}, {"lattice", concept_lattice_to_json(*l)}}.dump(2) << "\n";
      } else if (format == "dot") {
        std::cerr << l->size() << " concepts\n";
        std::cout << concept_lattice_to_dot(*l);
      } else {
        std::cout << concept_lattice_to_table(*l);
      }
    } else if (*tens) {
      auto a = load(file_a), b = load(file_b);
      const auto& lim = Limits::global();
      if (kind == "lattice") {
        check_factor(*a, lim.box_factor, "lattice");
        check_factor(*b, lim.box_factor, "lattice");
        emit(serialize_cxt(*lattice_tensor(a, b)), out);
      } else {
        check_factor(*a, lim.concept_tensor_factor, "concept");
        check_factor(*b, lim.concept_tensor_factor, "concept");
        emit(serialize_cxt(*concept_tensor(a, b)), out);
      }
    } else if (*dual) {
      emit(serialize_cxt(*dual_context(*load(file_a))), out);
    } else if (*hom) {
      auto a = load(file_a), b = load(file_b);
      if (list) {
        for (const auto& f : enumerate_hom(a, b).morphisms) std::cout << morphism_to_json(f).dump() << "\n";
      } else {
        std::cout << count_hom(a, b) << "\n";
      }
    } else if (*laws) {
      if (!replay.empty()) {
        if (!fs::is_regular_file(replay)) throw UsageError("no such file: " + replay);
        auto res = replay_counterexample(nlohmann::json::parse(read_file(replay)));
        std::cout << (res ? "fails: " + *res : std::string("passes")) << "\n";
        return res ? kDomain : kOk;
      }
      cfg.validate();
      std::vector<std::string> names;
      if (suite == "all") {
        names = suite_names();
      } else {
        const auto& known = suite_names();
        if (std::find(known.begin(), known.end(), suite) == known.end()) throw UsageError("unknown suite: " + suite);
        names = {suite};
      }
      bool ok = true;
      nlohmann::json reports = nlohmann::json::array();
      for (const auto& n : names) {
        auto report = run_suite(n, cfg);
        ok = ok && report.ok();
        if (format == "json")
          reports.push_back(report.to_json());
        else
          std::cout << report.to_table() << "\n";
      }
      if (format == "json") std::cout << (reports.size() == 1 ? reports[0] : reports).dump(2) << "\n";
      return ok ? kOk : kDomain;
    } else if (*disco) {
      if (!lexicon.empty() && !fs::is_regular_file(lexicon)) throw UsageError("no such file: " + lexicon);
      const auto lex = lexicon.empty() ? builtin_lexicon() : load_lexicon(lexicon);
      const auto words = split_sentence(sentence);
      const auto t = parse_type(target);
      Interpretation res;
      try {
        res = interpret(lex, words, t);
      } catch (const PreconditionFailed& e) {
        std::cerr << "no reduction: " << e.what() << "\n";
        return kDomain;
      }
      std::vector<ProtoType> types;
      for (const auto& w : words) types.push_back(lex.word(w).type);
      const auto all = concatenate(types);
      std::cout << "type: " << to_string(all) << " -> " << to_string(t) << "\n";
      std::cout << "contractions:";
      for (auto [i, j] : res.witness.pairs)
        std::cout << " (" << i << "," << j << ")";
      std::cout << "\n";
      if (res.meaning) {
        const auto& k = *res.factors.contexts.at(0);
        std::cout << "extent: " << labels(k.objects(), res.meaning->extent.bits()) << "\n";
        std::cout << "intent: " << labels(k.attributes(), res.meaning->intent.bits()) << "\n";
      } else {
        std::cout << "relation: " << res.relation.to_string() << "\n";
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SizeCapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kOk;
}
