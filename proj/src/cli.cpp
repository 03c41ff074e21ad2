#include "solgenus/cli.hpp"

#include <cstdlib>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "solgenus/conjugacy.hpp"
#include "solgenus/errors.hpp"
#include "solgenus/forms.hpp"
#include "solgenus/genus.hpp"
#include "solgenus/latimer_macduffee.hpp"
#include "solgenus/report.hpp"

namespace solgenus::cli {

namespace {

unsigned worker_count() {
  if (const char* env = std::getenv("SOLGENUS_WORKERS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw DomainError(std::string("SOLGENUS_WORKERS must be a positive integer, got '") +
                      env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

bool color_enabled() {
  const char* env = std::getenv("SOLGENUS_COLOR");
  return env != nullptr && std::string(env) != "0" && std::string(env) != "";
}

// Shared "matrix argument" plumbing: positional text or --json.
struct MatrixArg {
  std::string positional;
  std::string json;

  void attach(CLI::App* cmd) {
    cmd->add_option("matrix", positional, "monodromy as \"a b; c d\" or [[a,b],[c,d]]");
    cmd->add_option("--json", json, "monodromy as a JSON 2x2 array");
  }

  IntMat2 get() const {
    if (!json.empty() && !positional.empty()) {
      throw CLI::ValidationError("give the matrix either positionally or via --json, not both");
    }
    if (json.empty() && positional.empty()) throw CLI::RequiredError("matrix");
    return parse_matrix(json.empty() ? positional : json);
  }
};

Json classify_json(const IntMat2& a) {
  CharPoly p = char_poly(a);
  auto order = matrix_order(a);
  return {{"matrix", matrix_json(a)},
          {"trace", int_json(p.t)},
          {"det", int_json(p.n)},
          {"D", int_json(p.disc())},
          {"spectrum", to_string(spectrum_class(p))},
          {"hyperbolic", is_hyperbolic(a)},
          {"order", order ? Json(*order) : Json("infinite")},
          {"geometry", to_string(geometry(a))},
          {"branch", to_string(theorem_branch(p))}};
}

Json lm_json(const LMSet& lm) {
  Json reps = Json::array();
  for (const LMRep& rep : lm.reps) {
    reps.push_back({{"matrix", matrix_json(rep.matrix)},
                    {"form", form_json(rep.form)},
                    {"ideal", {{"norm", int_json(rep.ideal.norm)}, {"b", int_json(rep.ideal.b)}}}});
  }
  return {{"t", int_json(lm.poly.t)},
          {"n", int_json(lm.poly.n)},
          {"D", int_json(lm.disc.D)},
          {"D0", int_json(lm.disc.D0)},
          {"conductor", int_json(lm.disc.f)},
          {"h", lm.reps.size()},
          {"representatives", std::move(reps)}};
}

void print(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

void print_table(std::ostream& out, const Json& j) {
  // Flat key/value listing; nested values are shown compactly.
  for (const auto& [key, value] : j.items()) {
    out << key;
    for (std::size_t i = key.size(); i < 16; ++i) out << ' ';
    out << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
}

void emit(std::ostream& out, const Json& j, OutputFormat format) {
  if (format == OutputFormat::Table) {
    print_table(out, j);
  } else if (format == OutputFormat::Json) {
    print(out, j);
  } else {
    throw CLI::ValidationError("--format", "csv output is only available for genus and survey");
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Profinite genus of torus-bundle groups (Z x Z) x|_A Z for A in GL2(Z)",
               "solgenus"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");

  std::string format_text = "json";

  // genus
  MatrixArg genus_matrix;
  std::string evidence_text = "fast";
  auto* genus_cmd = app.add_subcommand("genus", "genus report for a monodromy matrix");
  genus_matrix.attach(genus_cmd);
  genus_cmd->add_option("--evidence", evidence_text, "none | fast | full")
      ->check(CLI::IsMember({"none", "fast", "full"}))
      ->capture_default_str();

  // classify
  MatrixArg classify_matrix;
  auto* classify_cmd = app.add_subcommand("classify", "spectrum, order and geometry of A");
  classify_matrix.attach(classify_cmd);

  // enumerate
  MatrixArg enum_matrix;
  std::string enum_trace, enum_det;
  auto* enum_cmd = app.add_subcommand(
      "enumerate", "one matrix per GL2(Z)-class with invertible ideal class, for a char poly");
  enum_cmd->add_option("matrix", enum_matrix.positional, "take (t, n) from this matrix");
  enum_cmd->add_option("--json", enum_matrix.json, "matrix as a JSON 2x2 array");
  enum_cmd->add_option("--trace", enum_trace, "trace t");
  enum_cmd->add_option("--det", enum_det, "determinant n (1 or -1)");

  // conj
  std::string conj_a, conj_b;
  long conj_bound = 0;
  auto* conj_cmd = app.add_subcommand("conj", "decide GL2(Z)-conjugacy of two matrices");
  conj_cmd->add_option("A", conj_a, "first matrix")->required();
  conj_cmd->add_option("B", conj_b, "second matrix")->required();
  conj_cmd->add_option("--bound", conj_bound,
                       "also run the exhaustive conjugator search with entries in [-bound, bound]")
      ->check(CLI::Range(0L, 1L << 20));

  // conj-mod
  std::string mod_a, mod_b;
  long mod_m = 0, mod_mmax = 0;
  auto* mod_cmd = app.add_subcommand("conj-mod", "conjugacy witnesses in GL2(Z/m)");
  mod_cmd->add_option("A", mod_a, "first matrix")->required();
  mod_cmd->add_option("B", mod_b, "second matrix")->required();
  auto* m_opt = mod_cmd->add_option("--m", mod_m, "single modulus")->check(CLI::Range(2L, 1L << 20));
  auto* mmax_opt = mod_cmd->add_option("--mmax", mod_mmax, "all moduli 2..mmax")
                       ->check(CLI::Range(2L, 1L << 20));
  m_opt->excludes(mmax_opt);

  // classnumber
  std::string cn_disc;
  std::string cn_mode = "improper";
  auto* cn_cmd = app.add_subcommand(
      "classnumber",
      "class number of primitive forms of discriminant D (enumerates reduced forms; "
      "practical for |D| up to about 1e8)");
  cn_cmd->add_option("D", cn_disc, "discriminant, nonsquare, 0 or 1 mod 4")->required();
  cn_cmd->add_option("--mode", cn_mode, "proper (narrow) | improper (ideal classes)")
      ->check(CLI::IsMember({"proper", "improper"}))
      ->capture_default_str();

  // canonical
  MatrixArg canon_matrix;
  auto* canon_cmd = app.add_subcommand("canonical", "canonical representative of the class of A");
  canon_matrix.attach(canon_cmd);

  // survey
  long tmax = 10;
  std::string det_text = "both";
  std::string scope_text = "sol";
  auto* survey_cmd = app.add_subcommand("survey", "genus table over the (t, n) grid");
  survey_cmd->add_option("--tmax", tmax, "traces in [-tmax, tmax]")
      ->check(CLI::Range(0L, 100000L))
      ->capture_default_str();
  survey_cmd->add_option("--det", det_text, "both | plus | minus (also 1, -1)")
      ->check(CLI::IsMember({"both", "plus", "minus", "1", "-1"}))
      ->capture_default_str();
  survey_cmd->add_option("--scope", scope_text, "sol: hyperbolic cells only; all: every cell")
      ->check(CLI::IsMember({"sol", "all"}))
      ->capture_default_str();

  // --format differs per subcommand only in default and allowed values.
  std::string genus_format = "json", survey_format = "csv";
  for (auto* cmd : {classify_cmd, enum_cmd, conj_cmd, mod_cmd, cn_cmd, canon_cmd}) {
    cmd->add_option("--format", format_text, "json | table")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
  }
  genus_cmd->add_option("--format", genus_format, "json | table | csv")
      ->check(CLI::IsMember({"json", "table", "csv"}))
      ->capture_default_str();
  survey_cmd->add_option("--format", survey_format, "csv | json | table")
      ->check(CLI::IsMember({"csv", "json", "table"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  }

  try {
    bool color = color_enabled();
    if (genus_cmd->parsed()) {
      IntMat2 a = genus_matrix.get();
      GenusReport report = genus(a, parse_evidence_level(evidence_text));
      out << render(report, parse_format(genus_format), color);
    } else if (classify_cmd->parsed()) {
      emit(out, classify_json(classify_matrix.get()), parse_format(format_text));
    } else if (enum_cmd->parsed()) {
      CharPoly p;
      bool from_matrix = !enum_matrix.positional.empty() || !enum_matrix.json.empty();
      bool from_poly = !enum_trace.empty() || !enum_det.empty();
      if (from_matrix == from_poly) {
        throw CLI::ValidationError("enumerate takes either a matrix or --trace and --det");
      }
      if (from_matrix) {
        p = char_poly(enum_matrix.get());
      } else {
        if (enum_trace.empty() || enum_det.empty()) {
          throw CLI::ValidationError("--trace and --det are both required");
        }
        if (p.t.set_str(enum_trace, 10) != 0 || p.n.set_str(enum_det, 10) != 0) {
          throw CLI::ValidationError("--trace and --det must be integers");
        }
        if (p.n != 1 && p.n != -1) throw DomainError("--det must be 1 or -1");
      }
      emit(out, lm_json(lm_representatives(p)), parse_format(format_text));
    } else if (conj_cmd->parsed()) {
      IntMat2 a = parse_matrix(conj_a);
      IntMat2 b = parse_matrix(conj_b);
      auto w = are_conjugate_gl2z(a, b);
      Json j{{"A", matrix_json(a)},
             {"B", matrix_json(b)},
             {"verdict", w ? "conjugate" : "not-conjugate"}};
      if (!w) j["reason"] = non_conjugacy_reason(a, b);
      j["witness"] = witness_json(w);
      if (conj_cmd->count("--bound") > 0) {
        BoundedSearch s = brute_force_conjugator(a, b, conj_bound);
        j["brute_force"] = {{"bound", s.bound},
                            {"witness", witness_json(s.witness)},
                            {"conclusive", s.found()}};
      }
      emit(out, j, parse_format(format_text));
    } else if (mod_cmd->parsed()) {
      IntMat2 a = parse_matrix(mod_a);
      IntMat2 b = parse_matrix(mod_b);
      char_poly(a);
      char_poly(b);
      Json j{{"A", matrix_json(a)}, {"B", matrix_json(b)}};
      if (mod_cmd->count("--m") > 0) {
        auto w = are_conjugate_mod_m(a, b, mod_m);
        j["m"] = mod_m;
        j["verdict"] = w ? "conjugate" : "not-conjugate";
        j["witness"] = w ? matrix_json(w->P) : Json(nullptr);
      } else {
        long upto = mod_cmd->count("--mmax") > 0 ? mod_mmax : kFullEvidenceModulus;
        Json ev = modular_json(modular_table(a, b, upto));
        for (auto& [key, value] : ev.items()) j[key] = value;
      }
      emit(out, j, parse_format(format_text));
    } else if (cn_cmd->parsed()) {
      Int D;
      if (D.set_str(cn_disc, 10) != 0) throw CLI::ValidationError("D", "not an integer: " + cn_disc);
      EquivMode mode = cn_mode == "proper" ? EquivMode::Proper : EquivMode::Improper;
      FormClassSet cs = class_set(D, mode);
      Json reps = Json::array();
      for (const BQForm& q : cs.reps) reps.push_back(form_json(q));
      emit(out,
           {{"D", int_json(cs.disc.D)},
            {"D0", int_json(cs.disc.D0)},
            {"f", int_json(cs.disc.f)},
            {"mode", to_string(mode)},
            {"h", cs.size()},
            {"reps", std::move(reps)}},
           parse_format(format_text));
    } else if (canon_cmd->parsed()) {
      IntMat2 a = canon_matrix.get();
      CanonicalForm cf = canonical_form(a);
      emit(out,
           {{"matrix", matrix_json(a)},
            {"branch", to_string(theorem_branch(char_poly(a)))},
            {"canonical", matrix_json(cf.target)},
            {"conjugator", matrix_json(cf.conjugator)}},
           parse_format(format_text));
    } else if (survey_cmd->parsed()) {
      SurveyOptions opts;
      opts.tmax = tmax;
      opts.det = (det_text == "plus" || det_text == "1")    ? DetFilter::Plus
                 : (det_text == "minus" || det_text == "-1") ? DetFilter::Minus
                                                             : DetFilter::Both;
      opts.scope = scope_text == "all" ? SurveyScope::All : SurveyScope::Sol;
      out << render(survey(opts, worker_count()), parse_format(survey_format), color);
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  } catch (const ParseError& e) {
    // a malformed matrix argument is a usage error, not a domain error
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace solgenus::cli
