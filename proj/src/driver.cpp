#include "pbw/driver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "pbw/catalog.hpp"
#include "pbw/dsl.hpp"
#include "pbw/extremal.hpp"
#include "pbw/morphcheck.hpp"
#include "pbw/vermalab.hpp"

namespace pbw {

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

Rational rational_flag(const std::string& name, const std::string& text) {
  const RationalFunction f = parse_rational_function(text);
  if (!f.is_constant()) throw Error(ErrorKind::Usage, "--" + name + " needs a rational number, got '" + text + "'");
  return f.constant_value();
}

Params parse_params(const std::vector<std::string>& items) {
  Params ps;
  for (const auto& it : items) {
    const auto eq = it.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::Usage, "--param expects NAME=VALUE, got '" + it + "'");
    ps[it.substr(0, eq)] = parse_rational_function(it.substr(eq + 1));
  }
  return ps;
}

std::vector<Rational> rational_list(const std::string& name, const std::string& text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(',', start);
    out.push_back(rational_flag(name, text.substr(start, end == std::string::npos ? std::string::npos : end - start)));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

// "l1,l2;l1,l2;..."
std::vector<WeightPair> weight_list(const std::string& text) {
  std::vector<WeightPair> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(';', start);
    const auto xs = rational_list("weights", text.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (xs.size() != 2) throw Error(ErrorKind::Usage, "--weights expects pairs 'l1,l2' separated by ';'");
    out.emplace_back(xs[0], xs[1]);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

struct Target {
  std::string spec;
  std::string name;  // block name inside a file
  Params params;

  bool from_catalog() const { return spec.rfind("catalog:", 0) == 0; }
  std::string key() const { return spec.substr(8); }

  std::vector<AlgebraPresentation> algebras(bool all) const {
    if (from_catalog()) return {build(key(), params)};
    if (!params.empty()) throw Error(ErrorKind::Usage, "--param only applies to catalog targets");
    const SourceFile f = parse_source_file(spec);
    if (!name.empty()) {
      const auto* a = f.find_algebra(name);
      if (!a) throw Error(ErrorKind::Usage, spec + " has no algebra '" + name + "'");
      return {*a};
    }
    if (f.algebras.empty()) throw Error(ErrorKind::Usage, spec + " declares no algebra");
    if (all) return f.algebras;
    return {f.algebras.front()};
  }

  GeneratorMorphism morphism() const {
    if (from_catalog()) return build_morphism(key(), params);
    if (!params.empty()) throw Error(ErrorKind::Usage, "--param only applies to catalog targets");
    const SourceFile f = parse_source_file(spec);
    if (!name.empty()) {
      const auto* m = f.find_map(name);
      if (!m) throw Error(ErrorKind::Usage, spec + " has no map '" + name + "'");
      return *m;
    }
    if (f.maps.empty()) throw Error(ErrorKind::Usage, spec + " declares no map");
    return f.maps.front();
  }
};

Report confluence_report(const AlgebraPresentation& p) {
  Report r;
  r.title = "confluence " + p.name;
  for (const auto& c : check_confluence(p)) {
    if (c.resolved)
      r.pass(c.label(p));
    else
      r.fail(c.label(p), "ConfluenceFailure", render(p, c.left) + " != " + render(p, c.right));
  }
  return r;
}

// Runs independent checks concurrently; the output order is the order of
// `jobs`, never the completion order.
std::vector<Report> run_jobs(const std::vector<std::function<Report()>>& jobs) {
  std::vector<Report> out(jobs.size());
  std::vector<std::optional<Error>> errors(jobs.size());
  const long n = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = jobs[k]();
    } catch (const Error& e) {
      errors[k] = e;
    }
  }
  for (const auto& e : errors)
    if (e) throw *e;
  return out;
}

Report verma_perturbed(int n, const Rational& qr) {
  auto ops = realize_lobachevskii(n, qr);
  const AlgebraPresentation p = build("lobachevskii_lin2");
  const auto id = TruncatedOperator::identity(n);
  Realization real;
  real.presentation = &p;
  auto bent = ops.t;
  bent.at(std::min(2, n - 1), std::min(3, n)) += Rational(1, 100);
  real.generators = {ops.ts, bent};
  real.coefficients[Symbol("eta")] = id - ops.t * ops.ts;
  return check_realization(real, "lin2 with a perturbed D");
}

std::string json_record(const std::string& check, const std::string& status, const std::string& witness) {
  nlohmann::ordered_json j;
  j["check"] = check;
  j["status"] = status;
  j["witness"] = witness;
  return j.dump();
}

}  // namespace

void write_report(std::ostream& out, const Report& r, OutputFormat f) {
  if (f == OutputFormat::JsonLines) {
    for (const auto& i : r.items) {
      const std::string check = r.title.empty() ? i.check : r.title + ": " + i.check;
      const std::string witness = i.kind.empty() ? i.witness : i.kind + ": " + i.witness;
      out << json_record(check, to_string(i.status), witness) << "\n";
    }
    for (const auto& n : r.notes) out << json_record(r.title.empty() ? "note" : r.title + ": note", "note", n) << "\n";
    return;
  }
  out << "== " << r.title << "\n";
  for (const auto& i : r.items) {
    std::string status = upper(to_string(i.status));
    status.resize(8, ' ');
    out << status << i.check;
    if (i.status == Status::Fail)
      out << "\n        " << i.kind << ": " << i.witness;
    else if (!i.witness.empty())
      out << "  [" << i.witness << "]";
    out << "\n";
  }
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  out << "-- " << r.count(Status::Pass) << " pass, " << r.count(Status::Fail) << " fail, "
      << r.count(Status::Deferred) << " deferred\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Skew-PBW presentations: rewriting, morphism checks and operator realizations", "pbw"};
  app.require_subcommand(1);

  std::string format = "text";
  std::vector<std::string> param_items;
  std::string target_spec, block_name;
  std::vector<std::string> exprs;
  std::string qr = "1", r = "1", mu = "0", weights, s0_values, xi_constant;
  int degree = -1, kmax = 6, truncation = -1;
  bool perturb = false;

  auto common = [&](CLI::App* sub, bool with_target) {
    sub->add_option("--format", format, "text or json-lines")->check(CLI::IsMember({"text", "json-lines"}));
    if (with_target) {
      sub->add_option("target", target_spec, "catalog:KEY or a .pbw file")->required();
      sub->add_option("--name", block_name, "algebra or map to select inside a file");
      sub->add_option("--param", param_items, "NAME=VALUE for a catalog entry")->take_all();
    }
  };

  auto* check = app.add_subcommand("check", "critical-pair confluence of a presentation");
  common(check, true);
  auto* nf = app.add_subcommand("nf", "normal form of expressions");
  common(nf, true);
  nf->add_option("-e,--expr", exprs, "expression")->required();
  auto* comm = app.add_subcommand("comm", "normal form of the commutator [A, B]");
  common(comm, true);
  comm->add_option("-e,--expr", exprs, "two expressions")->required()->expected(2);
  auto* morph = app.add_subcommand("morphism", "homomorphism and (for inclusions) monomorphism checks");
  common(morph, true);
  morph->add_option("--degree", degree, "monomorphism degree bound (default 6)");
  auto* qoc = app.add_subcommand("qoc", "quantization of constants, Borel preservation, quasilinearity");
  common(qoc, true);
  auto* verma = app.add_subcommand("verma", "Lobachevskii operator suite on a truncated Verma module");
  common(verma, false);
  verma->add_option("--qr", qr, "positive rational qR");
  verma->add_option("--degree", degree, "truncation degree N (default 12)");
  verma->add_flag("--perturb", perturb, "add a planted defect to D");
  auto* osc = app.add_subcommand("osc-witness", "oscillator realization and its lin2_xi dictionary");
  common(osc, false);
  osc->add_option("--r", r, "central charge r");
  osc->add_option("--mu", mu, "weight shift mu");
  osc->add_option("--truncation", truncation, "truncation degree (default 12)");
  osc->add_option("--xi-constant", xi_constant, "use xi -> A - eps instead of mu - eps");
  auto* ext = app.add_subcommand("extremal", "extremal projector and the step algebra Z");
  common(ext, false);
  ext->add_option("--kmax", kmax, "projector cutoff (default 6)");
  ext->add_option("--truncation", truncation, "highest singular-vector level (default kmax - 2)");
  ext->add_option("--weights", weights, "weight pairs 'l1,l2;l1,l2;...'");
  ext->add_option("--s0", s0_values, "s0 values for the dictionary search 'a,b,c'");
  auto* cat = app.add_subcommand("catalog", "list entries, or print one in .pbw form");
  common(cat, false);
  std::string cat_key;
  cat->add_option("key", cat_key, "entry or morphism key");
  cat->add_option("--param", param_items, "NAME=VALUE")->take_all();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    for (const auto* sub : app.get_subcommands()) out << sub->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const OutputFormat fmt = format == "json-lines" ? OutputFormat::JsonLines : OutputFormat::Text;
  std::vector<Report> reports;
  try {
    const Target target{target_spec, block_name, parse_params(param_items)};

    if (check->parsed()) {
      for (const auto& p : target.algebras(block_name.empty())) reports.push_back(confluence_report(p));
    } else if (nf->parsed() || comm->parsed()) {
      const auto p = target.algebras(false).front();
      std::vector<Element> xs;
      for (const auto& e : exprs) xs.push_back(normal_form(p, parse_expression(p, e)));
      if (nf->parsed()) {
        for (const auto& x : xs) out << render(p, x) << "\n";
      } else {
        out << render(p, commutator(p, xs[0], xs[1])) << "\n";
      }
      return 0;
    } else if (morph->parsed()) {
      const auto m = target.morphism();
      reports.push_back(verify_homomorphism(m));
      if (m.kind == MorphKind::Inclusion) {
        auto mono = verify_monomorphism(m, static_cast<unsigned>(degree < 0 ? 6 : degree));
        reports.push_back(mono.report);
      }
    } else if (qoc->parsed()) {
      const auto m = target.morphism();
      const LieConstants g = lie_constants(m.source);
      reports.push_back(check_quantization_of_constants(g, m));
      if (m.source.generators == std::vector<std::string>{"em", "e0", "ep"})
        reports.push_back(check_subalgebra_preserving(g, m, sl2_borels()));
      reports.push_back(check_quasilinear(m.target));
    } else if (verma->parsed()) {
      const Rational q = rational_flag("qr", qr);
      if (q <= 0) throw Error(ErrorKind::Usage, "--qr must be positive");
      const int n = degree < 0 ? 12 : degree;
      if (n < 2) throw Error(ErrorKind::Usage, "--degree must be at least 2");
      const Rational h = weight_from_qr(q);
      std::vector<std::function<Report()>> jobs = {
          [=] { return check_sl2_relations(n, h); },
          [=] { return check_tensor_relations(n, h); },
          [=] { return check_lobachevskii_relations(n, q); },
          [=] { return check_linearization_realization(Linearization::Lin1, n, q); },
          [=] { return check_linearization_realization(Linearization::Lin2, n, q); },
          [=] { return check_linearization_realization(Linearization::Lin2Xi, n, q); },
          [=] { return check_boundedness({4, 8, 16, 32}, q); },
      };
      if (perturb) jobs.push_back([=] { return verma_perturbed(n, q); });
      reports = run_jobs(jobs);
    } else if (osc->parsed()) {
      const int n = truncation < 0 ? 12 : truncation;
      if (n < 2) throw Error(ErrorKind::Usage, "--truncation must be at least 2");
      std::optional<Rational> a;
      if (!xi_constant.empty()) a = rational_flag("xi-constant", xi_constant);
      reports.push_back(check_osc_witness(n, rational_flag("r", r), rational_flag("mu", mu), a));
    } else if (ext->parsed()) {
      const int n = truncation < 0 ? kmax - 2 : truncation;
      if (n < 0 || n + 1 > kmax) throw Error(ErrorKind::Usage, "--truncation must lie in 0..kmax-1");
      const auto p = build_projector(kmax);
      const auto ws = weights.empty() ? default_weight_pairs() : weight_list(weights);
      const auto cs = s0_values.empty() ? default_s0_values() : rational_list("s0", s0_values);
      auto res = check_step_algebra(p, n, ws, cs);
      if (!res.dictionary_found)
        res.report.note("no dictionary into lobachevskii_lin2_xi; the computed relation set is attached above");
      reports.push_back(std::move(res.report));
    } else if (cat->parsed()) {
      if (cat_key.empty()) {
        for (const auto& e : list_entries()) {
          std::string params;
          for (const auto& x : e.required) params += (params.empty() ? "" : " ") + x;
          for (const auto& x : e.optional) params += (params.empty() ? "[" : " [") + x + "]";
          out << e.key << "\t" << (params.empty() ? "-" : params) << "\t" << e.summary << "\n";
        }
        for (const auto& k : list_morphisms()) out << k << "\tmorphism\n";
        return 0;
      }
      const auto ms = list_morphisms();
      if (std::find(ms.begin(), ms.end(), cat_key) != ms.end())
        out << print(build_morphism(cat_key, target.params));
      else
        out << print(build(cat_key, target.params));
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return 2;
  }

  bool ok = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i && fmt == OutputFormat::Text) out << "\n";
    write_report(out, reports[i], fmt);
    ok = ok && reports[i].passed();
  }
  if (fmt == OutputFormat::Text) out << "\nresult: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

}  // namespace pbw
