#include "sheafcore/cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sheafcore/cohomology.hpp"
#include "sheafcore/document.hpp"
#include "sheafcore/error.hpp"
#include "sheafcore/simplify.hpp"

namespace sheafcore {

using nlohmann::json;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

class CertificationError : public Error {
 public:
  using Error::Error;
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json generator(const std::string& strategy = {}) {
  json g = {{"tool", "sheafcore"}, {"version", std::string(kVersion)}};
  if (!strategy.empty()) g["strategy"] = strategy;
  return g;
}

json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

// Betti numbers (trailing empty degrees trimmed) and, for integral results,
// torsion per degree over the same range.
json homology_json(const HomologyResult& h, bool integral) {
  std::size_t len = h.degrees.size();
  while (len > 0 && h.degrees[len - 1].betti == 0 && h.degrees[len - 1].torsion.empty()) --len;
  json betti = json::array(), torsion = json::array();
  for (std::size_t j = 0; j < len; ++j) {
    betti.push_back(h.degrees[j].betti);
    json t = json::array();
    for (const auto& f : h.degrees[j].torsion) t.push_back(integer_json(f));
    torsion.push_back(std::move(t));
  }
  json r = {{"betti", std::move(betti)}};
  if (integral) r["torsion"] = std::move(torsion);
  return r;
}

struct Loaded {
  SpaceDocument doc;
  SheavedSpace space;
};

Loaded load(const std::string& path) {
  Loaded l{read_document(path), {}};
  l.space = to_space(l.doc);
  if (auto report = check_commutativity(l.space.sheaf()); !report)
    throw CommutativityError(report.lower, report.upper);
  return l;
}

void require_field(const SpaceDocument& doc, const std::string& what) {
  if (!doc.field.is_field())
    throw UsageError(what + " needs field coefficients (Q or GF:p); use 'homology' for Z");
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const Loaded l = load(path);
  out << json{{"generator", generator()},
              {"valid", true},
              {"field", l.doc.field.tag()},
              {"elements", l.space.size()},
              {"covers", l.space.poset().covers().size()}}
             .dump(2)
      << "\n";
  return exit_ok;
}

int cmd_cohomology(const std::string& path, std::optional<std::size_t> max_degree,
                   std::ostream& out) {
  const auto start = Clock::now();
  const SpaceDocument doc = read_document(path);
  require_field(doc, "cohomology");
  const Loaded l = load(path);
  const HomologyResult h = sheaf_cohomology(l.space, max_degree);
  json report = homology_json(h, false);
  report["generator"] = generator();
  report["field"] = doc.field.tag();
  report["sizes"] = {{"elements", l.space.size()}};
  if (max_degree) report["max_degree"] = *max_degree;
  report["timing_ms"] = elapsed_ms(start);
  out << report.dump(2) << "\n";
  return exit_ok;
}

int cmd_homology(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const SpaceDocument doc = read_document(path);
  if (doc.sheaf) err << "warning: sheaf block ignored; homology uses the order complex only\n";
  const Poset p = Poset::build(doc.elements, doc.covers);
  const OrderComplex k = order_complex(p);
  json report = homology_json(integral_homology(k), true);
  json reduced = homology_json(integral_reduced_homology(k), true);
  reduced["minus_one"] = integral_reduced_homology(k).minus_one_rank;
  report["reduced"] = std::move(reduced);
  report["generator"] = generator();
  report["sizes"] = {{"elements", p.size()}};
  report["timing_ms"] = elapsed_ms(start);
  out << report.dump(2) << "\n";
  return exit_ok;
}

struct SimplifyOptions {
  std::string strategy = "beats";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_path;
  bool core = false;
};

int cmd_simplify(const std::string& path, const SimplifyOptions& opt, std::ostream& out) {
  const auto start = Clock::now();
  const Strategy strategy = *parse_strategy(opt.strategy);
  const SpaceDocument doc = read_document(path);
  const bool integral = !doc.field.is_field();
  if (integral && strategy != Strategy::constant_updown)
    throw UsageError("Z documents support only the constant-updown strategy");
  const Loaded l = load(path);
  if (strategy == Strategy::constant_updown && !l.space.sheaf().is_constant())
    throw UsageError("constant-updown needs a constant sheaf");

  // Z: integral reduced homology of the order complex; fields: sheaf cohomology.
  auto invariant = [&](const SheavedSpace& sp) {
    return integral ? integral_reduced_homology(order_complex(sp.poset()))
                    : sheaf_cohomology(sp);
  };
  const HomologyResult before = invariant(l.space);
  auto [result, trace] = simplify_pipeline(l.space, strategy, RemovalOrder{opt.seed});
  const HomologyResult after = invariant(result);
  if (!(before == after))
    throw CertificationError("cohomology changed during simplification");

  const SpaceDocument simplified = from_space(result, doc.field, doc.sheaf.has_value());
  const std::string text = serialize_document(simplified, opt.strategy);
  const SpaceDocument reparsed = parse_document(text);
  if (!(reparsed == simplified) || !(to_space(reparsed) == to_space(simplified)) ||
      !check_commutativity(to_space(reparsed).sheaf()))
    throw CertificationError("simplified document does not round-trip");

  json steps = json::array();
  for (const auto& s : trace.steps)
    steps.push_back({{"removed", s.removed}, {"rule", std::string(to_string(s.rule))}});
  json report = {{"generator", generator(opt.strategy)},
                 {"trace", std::move(steps)},
                 {"sizes", {{"before", l.space.size()}, {"after", result.size()}}},
                 {"before", homology_json(before, integral)},
                 {"after", homology_json(after, integral)},
                 {"certified", true}};
  if (integral) {
    report["before"]["reduced"] = true;
    report["after"]["reduced"] = true;
  }
  if (opt.core) report["core_size"] = result.size();
  if (opt.out_path) {
    std::ofstream file(*opt.out_path);
    if (!file || !(file << text)) throw UsageError("cannot write " + *opt.out_path);
    report["output"] = *opt.out_path;
  } else {
    report["document"] = json::parse(text);
  }
  report["timing_ms"] = elapsed_ms(start);
  out << report.dump(2) << "\n";
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sheaved finite spaces: validation, simplification, cohomology", "sheafcore"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string path;
  std::optional<std::size_t> max_degree;
  SimplifyOptions simplify_opt, core_opt;
  core_opt.core = true;

  auto* validate = app.add_subcommand("validate", "Check structure and commutativity");
  validate->add_option("path", path, "space document")->required();

  auto* cohomology = app.add_subcommand("cohomology", "Sheaf cohomology via the Roos complex");
  cohomology->add_option("path", path, "space document")->required();
  cohomology->add_option("--max-degree", max_degree, "highest degree to compute");

  auto* homology = app.add_subcommand("homology", "Integral homology of the order complex");
  homology->add_option("path", path, "space document")->required();

  auto* simplify = app.add_subcommand("simplify", "Cohomology-preserving vertex removal");
  simplify->add_option("path", path, "space document")->required();
  simplify->add_option("--strategy", simplify_opt.strategy, "removal rules")
      ->check(CLI::IsMember({"beats", "acyclic-down", "constant-updown"}));
  simplify->add_option("--seed", simplify_opt.seed, "random removal order");
  simplify->add_option("--out", simplify_opt.out_path, "write the simplified document here");

  auto* core = app.add_subcommand("core", "Collapse beats until none remain");
  core->add_option("path", path, "space document")->required();
  core->add_option("--seed", core_opt.seed, "random removal order");
  core->add_option("--out", core_opt.out_path, "write the core document here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  try {
    if (validate->parsed()) return cmd_validate(path, out);
    if (cohomology->parsed()) return cmd_cohomology(path, max_degree, out);
    if (homology->parsed()) return cmd_homology(path, out, err);
    if (simplify->parsed()) return cmd_simplify(path, simplify_opt, out);
    if (core->parsed()) return cmd_simplify(path, core_opt, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const CommutativityError& e) {
    err << "error: " << e.what() << "\n";
    return exit_commutativity;
  } catch (const CertificationError& e) {
    err << "certification failed: " << e.what() << "\n";
    return exit_certification;
  } catch (const IntegrityError& e) {
    err << "certification failed: " << e.what() << "\n";
    return exit_certification;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_structure;
  }
  return exit_usage;
}

}  // namespace sheafcore
