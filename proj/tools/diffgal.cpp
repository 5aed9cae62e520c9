// diffgal command-line interface. Exit code 0 whenever a verdict is
// produced (No included), 1 on input or runtime errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "diffgal/errors.hpp"
#include "diffgal/report.hpp"

using namespace diffgal;

namespace {

struct Common {
  std::string input;
  std::string out;
  int degree_bound = -1;
  int orbit_bound = -1;
  int denominator_bound = -1;
  std::string case_override;
  std::string q_override;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void apply_bounds(const Common& c, SolverBounds& b) {
  if (c.degree_bound >= 0) b.max_numerator_degree = c.degree_bound;
  if (c.orbit_bound >= 0) b.orbit_bound = c.orbit_bound;
  if (c.denominator_bound >= 0) b.max_denominator_degree = c.denominator_bound;
}

SystemDocument load(const Common& c) {
  SystemDocument doc = parse_system_document(read_text(c.input));
  if (!c.case_override.empty()) {
    doc.system.op = parse_operator(c.case_override, c.q_override);
  } else if (!c.q_override.empty()) {
    doc.system.op = parse_operator(case_name(doc.system.op.tag), c.q_override);
  }
  apply_bounds(c, doc.bounds);
  return doc;
}

void write(const Common& c, const Json& report) {
  const std::string text = emit_report(report);
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error("cannot write '" + c.out + "'");
  f << text;
}

void add_bound_flags(CLI::App* app, Common& c) {
  app->add_option("--degree-bound", c.degree_bound, "largest numerator degree excess searched")->check(CLI::NonNegativeNumber);
  app->add_option("--orbit-bound", c.orbit_bound, "sigma-steps in the Mahler orbit analysis")->check(CLI::NonNegativeNumber);
  app->add_option("--denominator-bound", c.denominator_bound, "largest universal denominator degree")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--out", c.out, "output file (default stdout)");
}

void add_doc_flags(CLI::App* app, Common& c) {
  app->add_option("input", c.input, "system document (JSON), - for stdin")->required();
  app->add_option("--case", c.case_override, "override the document case (S, Q, M)");
  app->add_option("--q", c.q_override, "override q");
  add_bound_flags(app, c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrability and hypertranscendence of linear difference systems"};
  app.require_subcommand(1);
  Common c;

  auto* analyze = app.add_subcommand("analyze", "full pipeline report");
  add_doc_flags(analyze, c);
  auto* integrable = app.add_subcommand("integrable", "is sigma(Y) = AY integrable");
  add_doc_flags(integrable, c);
  auto* proj = app.add_subcommand("proj-integrable", "projective integrability and the gap test");
  add_doc_flags(proj, c);
  auto* cgroup = app.add_subcommand("constant-group", "group data of a constant system");
  add_doc_flags(cgroup, c);

  auto* tele = app.add_subcommand("telescope", "solve mu sigma(b) - b = g [- c]");
  std::string g_text;
  bool allow_constant = false;
  tele->add_option("g", g_text, "right-hand side expression")->required();
  tele->add_option("--case", c.case_override, "S, Q or M")->required();
  tele->add_option("--q", c.q_override, "q for cases Q and M");
  tele->add_flag("--allow-constant", allow_constant, "also allow subtracting a constant c");
  add_bound_flags(tele, c);

  auto* hyper = app.add_subcommand("hypertrans", "scalar classification or SL(2) lift reports");
  std::string a_text, group_text;
  std::vector<std::string> companion;
  hyper->add_option("a", a_text, "scalar coefficient a of sigma(y) = a y");
  hyper->add_option("--case", c.case_override, "S, Q or M (default S)");
  hyper->add_option("--q", c.q_override, "q for cases Q and M");
  hyper->add_option("--group", group_text, "reductive sigma-Galois group, e.g. \"SL(2)^2\"");
  hyper->add_option("--companion", companion, "polynomials a_j of companion blocks [[0,-1],[1,a_j]] (case S)");
  add_bound_flags(hyper, c);

  auto* gauge = app.add_subcommand("gauge", "print the document for sigma(T) A T^{-1}");
  std::string t_text;
  add_doc_flags(gauge, c);
  gauge->add_option("--matrix", t_text, "T as a JSON array of expression strings")->required();

  auto* kron = app.add_subcommand("kron", "print the document for det(A)^{-1} A^{(x)n}");
  add_doc_flags(kron, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (analyze->parsed()) {
      write(c, analyze_report(load(c)));
    } else if (integrable->parsed()) {
      write(c, integrable_report(load(c)));
    } else if (proj->parsed()) {
      write(c, projective_report(load(c)));
    } else if (cgroup->parsed()) {
      write(c, constant_group_report(load(c)));
    } else if (tele->parsed()) {
      const OperatorCase op = parse_operator(c.case_override, c.q_override);
      SolverBounds b;
      apply_bounds(c, b);
      const RationalFunction g = parse_expression(g_text);
      write(c, telescope_json(op, g, allow_constant, telescope_scalar(g, op, allow_constant, b)));
    } else if (hyper->parsed()) {
      const int modes = !a_text.empty() + !group_text.empty() + !companion.empty();
      if (modes != 1) throw Error("hypertrans needs exactly one of: a, --group, --companion");
      if (!group_text.empty()) {
        write(c, Json{{"lift", lift_json(reductive_lift_report(parse_reductive_descriptor(group_text)))}});
      } else if (!companion.empty()) {
        const OperatorCase op = parse_operator(c.case_override.empty() ? "S" : c.case_override, c.q_override);
        std::vector<Polynomial> as;
        for (const auto& s : companion) {
          const RationalFunction a = parse_expression(s);
          if (!a.den().is_one()) throw Error("companion entries must be polynomials");
          as.push_back(a.num());
        }
        write(c, companion_report(op, as));
      } else {
        const OperatorCase op = parse_operator(c.case_override.empty() ? "S" : c.case_override, c.q_override);
        SolverBounds b;
        apply_bounds(c, b);
        write(c, scalar_report(op, parse_expression(a_text), b));
      }
    } else if (gauge->parsed()) {
      const SystemDocument doc = load(c);
      const MatrixRF T = parse_matrix_json(t_text);
      if (T.rows() != doc.system.n()) throw DimensionMismatch("T must have the size of A");
      if (T.det().is_zero()) throw SingularInput("T is not invertible");
      write(c, system_json(gauge_transform(doc.system, T)));
    } else if (kron->parsed()) {
      const SystemDocument doc = load(c);
      write(c, system_json(DifferenceSystem{doc.system.op, kron_power_reduction(doc.system.A)}));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
