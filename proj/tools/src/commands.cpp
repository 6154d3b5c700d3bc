#include "regdiff_cli/commands.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "regdiff_cli/parse_poly.hpp"

namespace regdiff::cli {

namespace {

std::string eta_str(long n) { return n == 2 ? "dx/y" : "dx/y^" + std::to_string(n - 1); }

void draw(const ValuationTree& T, const std::vector<Provenance>* prov, size_t i, const std::string& indent,
          bool last, bool root, std::ostringstream& os) {
  const auto& pt = T.node(i);
  os << indent;
  if (!root) os << (last ? "`-- " : "|-- ");
  os << (pt.is_type1() ? "branch " : "") << pt.str();
  if (prov) os << "  (" << provenance_str((*prov)[i]) << ")";
  os << "\n";
  auto ch = T.children(i);
  std::string next = root ? "" : indent + (last ? "    " : "|   ");
  for (size_t k = 0; k < ch.size(); ++k) draw(T, prov, ch[k], next, k + 1 == ch.size(), false, os);
}

std::string draw_tree(const ModelVals& m) {
  std::ostringstream os;
  const auto& T = m.tree;
  for (size_t i : T.order())
    if (!T.parent(i)) draw(T, &m.provenance, i, "", true, true, os);
  return os.str();
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    err << "error: unsupported input: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kVerificationError;
  }
}

ModelVals build_model(const Options& o, QPoly& f) {
  f = parse_poly(o.poly);
  return alg31(divisor_from_poly(o.p, f, o.include_infinity));
}

}  // namespace

DivisorSpec divisor_from_poly(long p, const QPoly& f, bool include_infinity) {
  if (f.degree() < 1) throw std::invalid_argument("divisor: polynomial must be nonconstant");
  SuperellipticCurve c{p, 2, f};
  DivisorSpec D = c.divisor();
  D.include_infinity = include_infinity;
  D.validate();
  return D;
}

nlohmann::json model_report(const ModelVals& m, const RegularityReport& rep, const QPoly& f) {
  nlohmann::json j;
  j["command"] = "model";
  j["poly"] = f.str();
  j["model"] = m.to_json();
  j["components"] = component_graph(m).to_json(m);
  j["finite"] = nlohmann::json::array();
  for (size_t i : m.finite()) j["finite"].push_back(m.points[i].str());
  j["regularity"] = {{"ok", rep.ok}, {"checked", rep.checked}, {"node", rep.node},
                     {"residue_class", rep.residue_class}, {"reason", rep.reason}};
  return j;
}

std::string model_text(const ModelVals& m, const RegularityReport& rep, const QPoly& f) {
  std::ostringstream os;
  os << "divisor: zeros of " << f.str() << " at p = " << m.p << (m.include_infinity ? ", with infinity" : "")
     << "\n";
  os << "finite valuations: " << m.finite().size() << ", branches: " << m.branches().size() << "\n\n";
  os << draw_tree(m) << "\n";
  if (rep.ok)
    os << "regularity: ok (" << rep.checked << " residue classes checked)\n";
  else
    os << "regularity: FAILED at " << rep.node << " " << rep.residue_class << ": " << rep.reason << "\n";
  return os.str();
}

std::string tree_text(const ModelVals& m) {
  std::ostringstream os;
  ComponentGraph g = component_graph(m);
  os << "components:\n";
  for (size_t v : g.vertices) os << "  E" << v << " = " << m.points[v].str() << "\n";
  os << "intersections:\n";
  for (const auto& [a, b] : g.edges) os << "  E" << a << " -- E" << b << "\n";
  os << "horizontal:\n";
  for (const auto& h : g.horizontal)
    os << "  " << m.points[h.branch].str() << " meets E" << h.component << " in D(" << h.key.str() << ")\n";
  return os.str();
}

nlohmann::json differentials_report(const DifferentialsResult& r) {
  nlohmann::json j = r.to_json();
  j["command"] = "differentials";
  return j;
}

std::string differentials_text(const DifferentialsResult& r) {
  std::ostringstream os;
  const auto& c = r.curve;
  os << "curve: y^" << c.n << " = " << c.f.str() << " at p = " << c.p << "\n";
  os << "eta = " << eta_str(c.n) << "\nK-basis:";
  for (const auto& m : r.kb) os << " " << m.str();
  os << "\n\n";
  size_t width = 9;
  for (const auto& row : r.rows) width = std::max(width, row.v.str().size());
  os << std::left << std::setw(static_cast<int>(width)) << "valuation" << "  e  " << std::setw(8) << "v(dx)"
     << std::setw(8) << "w(y)" << "w(eta)\n";
  for (const auto& row : r.rows)
    os << std::setw(static_cast<int>(width)) << row.v.str() << "  " << std::setw(3) << row.e << std::setw(8)
       << rat_str(row.vdx) << std::setw(8) << rat_str(row.wy) << rat_str(row.weta) << "\n";
  os << "\nintegral differentials (times " << eta_str(c.n) << "):\n";
  for (const auto& s : r.basis_strings()) os << "  " << s << "\n";
  return os.str();
}

int cmd_model(const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    QPoly f;
    ModelVals m = build_model(o, f);
    RegularityReport rep;
    if (o.verify) rep = verify_regularity(m);
    if (o.format == "json")
      out << model_report(m, rep, f).dump(2) << "\n";
    else
      out << model_text(m, rep, f);
    if (!rep.ok) {
      err << "verification failed: " << rep.node << " " << rep.residue_class << ": " << rep.reason << "\n";
      return int(kVerificationError);
    }
    return int(kOk);
  });
}

int cmd_tree(const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    QPoly f;
    ModelVals m = build_model(o, f);
    if (o.format == "json")
      out << component_graph(m).to_json(m).dump(2) << "\n";
    else
      out << tree_text(m);
    return int(kOk);
  });
}

int cmd_differentials(const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    SuperellipticCurve c{o.p, o.n, parse_poly(o.poly)};
    c.validate();
    auto t0 = std::chrono::steady_clock::now();
    DifferentialsResult r = integral_basis(c);
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::vector<std::string> problems;
    if (o.verify) {
      RegularityReport rep = verify_regularity(r.model);
      if (!rep.ok) problems.push_back("model not regular at " + rep.node + ": " + rep.reason);
      for (const auto& row : r.rows) {
        if (row.e != row.e_index)
          err << "warning: at " << row.v.str() << " e = " << row.e << " differs from the value-group index "
              << row.e_index << "\n";
        ExtValuation w = extend_valuation(row.v, c);
        if (!is_reduced(w, row.reduced, 50, 1))
          problems.push_back("basis not reduced at " + row.v.str());
      }
    }
    if (o.format == "json") {
      nlohmann::json j = differentials_report(r);
      if (o.timing) j["timing_ms"] = ms;
      out << j.dump(2) << "\n";
    } else {
      out << differentials_text(r);
      if (o.timing) out << "time: " << ms << " ms\n";
    }
    for (const auto& p : problems) err << "verification failed: " << p << "\n";
    return int(problems.empty() ? kOk : kVerificationError);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regular models of P^1 and integral differentials of superelliptic curves"};
  app.require_subcommand(1);
  Options o;
  std::string inf = "on", verify = "strict";
  auto common = [&](CLI::App* sub, bool with_n) {
    sub->add_option("--p", o.p, "the prime")->required();
    if (with_n) sub->add_option("--n", o.n, "the exponent of y")->required();
    sub->add_option("--poly", o.poly, "f(x), e.g. \"(x^2+3^4)*((x-1)^2-3^3)\"")->required();
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--include-infinity", inf, "include the point at infinity in the divisor")
        ->check(CLI::IsMember({"on", "off"}));
    sub->add_option("--verify", verify, "run the regularity verifier and spot checks")
        ->check(CLI::IsMember({"strict", "off"}));
    sub->add_flag("--timing", o.timing, "report the running time");
  };
  CLI::App* model = app.add_subcommand("model", "regular model of P^1 for the zeros of f");
  CLI::App* tree = app.add_subcommand("tree", "component graph of the model");
  CLI::App* diff = app.add_subcommand("differentials", "integral differentials of y^n = f(x)");
  common(model, false);
  common(tree, false);
  common(diff, true);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  o.include_infinity = inf == "on";
  o.verify = verify == "strict";
  if (*model) return cmd_model(o, out, err);
  if (*tree) return cmd_tree(o, out, err);
  return cmd_differentials(o, out, err);
}

}  // namespace regdiff::cli
