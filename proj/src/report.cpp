#include "solgenus/report.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "solgenus/errors.hpp"

namespace solgenus {

OutputFormat parse_format(std::string_view text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "table") return OutputFormat::Table;
  throw DomainError("unknown format: " + std::string(text));
}

Json int_json(const Int& v) {
  if (fits_double_exactly(v)) return Json(*to_int64(v));
  return Json(to_string(v));
}

Json matrix_json(const IntMat2& m) {
  return Json::array({Json::array({int_json(m.a), int_json(m.b)}),
                      Json::array({int_json(m.c), int_json(m.d)})});
}

Json form_json(const BQForm& q) {
  return Json::array({int_json(q.a()), int_json(q.b()), int_json(q.c())});
}

Json witness_json(const std::optional<ConjugacyWitness>& w) {
  return w ? matrix_json(w->P) : Json(nullptr);
}

Json modular_json(const ProfiniteEvidence& ev) {
  Json table = Json::array();
  for (const ModularRow& row : ev.table) {
    table.push_back({{"m", row.m},
                     {"witness", row.witness ? matrix_json(row.witness->P) : Json(nullptr)}});
  }
  return {{"m_max", ev.m_max},
          {"consistent", ev.consistent()},
          {"verdict", ev.verdict()},
          {"table", std::move(table)}};
}

Json to_json(const GenusReport& r) {
  Json reps = Json::array();
  for (const Representative& rep : r.representatives) {
    Json item{{"matrix", matrix_json(rep.matrix)}};
    item["form"] = rep.form ? form_json(*rep.form) : Json(nullptr);
    item["ideal"] = rep.ideal ? Json{{"norm", int_json(rep.ideal->norm)},
                                     {"b", int_json(rep.ideal->b)}}
                              : Json(nullptr);
    reps.push_back(std::move(item));
  }
  Json pairs = Json::array();
  for (const PairEvidence& pe : r.evidence) {
    Json item{{"i", pe.i},
              {"j", pe.j},
              {"z_conjugate", pe.z_witness.has_value()},
              {"z_witness", witness_json(pe.z_witness)}};
    if (pe.brute_force) {
      item["brute_force"] = {{"bound", pe.brute_force->bound},
                             {"witness", witness_json(pe.brute_force->witness)}};
    }
    if (pe.modular) item["modular"] = modular_json(*pe.modular);
    pairs.push_back(std::move(item));
  }
  Json out;
  out["matrix"] = matrix_json(r.matrix);
  out["trace"] = int_json(r.poly.t);
  out["det"] = int_json(r.poly.n);
  out["geometry"] = to_string(r.geometry);
  out["branch"] = to_string(r.branch);
  out["D"] = int_json(r.field.D);
  out["D0"] = int_json(r.field.D0);
  out["conductor"] = int_json(r.field.f);
  out["d"] = int_json(r.field.d);
  out["eigenvalue"] = r.eigenvalue ? Json(r.eigenvalue->value.to_string()) : Json(nullptr);
  out["h_field"] = r.h_field;
  out["h_order"] = r.h_order;
  out["genus"] = r.genus;
  out["discrepancy"] = r.discrepancy;
  out["rigid"] = r.rigid();
  out["representatives"] = std::move(reps);
  out["canonical"] = {{"target", matrix_json(r.canonical.target)},
                      {"conjugator", matrix_json(r.canonical.conjugator)}};
  out["input_class"] = r.input_class
                           ? Json{{"index", *r.input_class}, {"conjugator", witness_json(r.input_witness)}}
                           : Json(nullptr);
  out["evidence"] = {{"level", to_string(r.evidence_level)}, {"pairs", std::move(pairs)}};
  out["presentation"] = r.presentation;
  return out;
}

SurveyRow survey_row(const GenusReport& r) {
  return {r.poly.t,  r.poly.n,  r.field.D, r.field.D0, r.field.f, r.geometry,
          r.branch,  r.h_field, r.h_order, r.genus,    r.rigid()};
}

std::vector<SurveyRow> survey(const SurveyOptions& options, unsigned workers) {
  if (options.tmax < 0) throw DomainError("tmax must be non-negative");
  std::vector<std::pair<long, long>> cells;
  for (long t = -options.tmax; t <= options.tmax; ++t) {
    for (long n : {-1L, 1L}) {
      if (options.det == DetFilter::Plus && n != 1) continue;
      if (options.det == DetFilter::Minus && n != -1) continue;
      if (options.scope == SurveyScope::Sol && !is_hyperbolic(companion({t, n}))) continue;
      cells.emplace_back(t, n);
    }
  }
  std::vector<std::optional<SurveyRow>> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        auto [t, n] = cells[i];
        rows[i] = survey_row(genus(companion({t, n}), EvidenceLevel::None));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  workers = std::max(1u, workers);
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  std::vector<SurveyRow> out;
  out.reserve(rows.size());
  for (auto& row : rows) out.push_back(std::move(*row));
  return out;
}

namespace {

constexpr std::string_view kRed = "\x1b[31m";
constexpr std::string_view kGreen = "\x1b[32m";
constexpr std::string_view kReset = "\x1b[0m";

std::string csv_line(const SurveyRow& row) {
  std::ostringstream os;
  os << row.t << ',' << row.n << ',' << row.D << ',' << row.D0 << ',' << row.f << ','
     << to_string(row.geometry) << ',' << to_string(row.branch) << ',' << row.h_field
     << ',' << row.h_order << ',' << row.genus << ',' << (row.rigid ? "true" : "false");
  return os.str();
}

Json row_json(const SurveyRow& row) {
  return {{"t", int_json(row.t)},           {"n", int_json(row.n)},
          {"D", int_json(row.D)},           {"D0", int_json(row.D0)},
          {"f", int_json(row.f)},           {"geometry", to_string(row.geometry)},
          {"branch", to_string(row.branch)}, {"h_field", row.h_field},
          {"h_order", row.h_order},         {"genus", row.genus},
          {"rigid", row.rigid}};
}

std::string paint(std::string text, bool rigid, bool color) {
  if (!color) return text;
  return std::string(rigid ? kGreen : kRed) + text + std::string(kReset);
}

std::string table_report(const GenusReport& r, bool color) {
  std::ostringstream os;
  auto line = [&](std::string_view key, const std::string& value) {
    os << std::left << std::setw(16) << key << value << '\n';
  };
  line("matrix", format_matrix(r.matrix));
  line("char poly", "x^2 - (" + to_string(r.poly.t) + ")x + (" + to_string(r.poly.n) + ")");
  line("geometry", std::string(to_string(r.geometry)));
  line("branch", std::string(to_string(r.branch)));
  line("D / D0 / f", to_string(r.field.D) + " / " + to_string(r.field.D0) + " / " +
                         to_string(r.field.f));
  if (r.eigenvalue) line("eigenvalue", r.eigenvalue->value.to_string());
  line("h_field", std::to_string(r.h_field));
  line("h_order", std::to_string(r.h_order) + (r.discrepancy ? "  (differs from h_field)" : ""));
  line("genus", paint(std::to_string(r.genus) + (r.rigid() ? " (rigid)" : " (not rigid)"),
                      r.rigid(), color));
  line("canonical", format_matrix(r.canonical.target) + "  via P = " +
                        format_matrix(r.canonical.conjugator));
  line("presentation", r.presentation);
  os << "representatives\n";
  for (std::size_t i = 0; i < r.representatives.size(); ++i) {
    const Representative& rep = r.representatives[i];
    os << "  [" << i << "] " << format_matrix(rep.matrix);
    if (rep.form) os << "   form " << rep.form->to_string();
    if (rep.ideal) {
      os << "   ideal [" << rep.ideal->norm << ", (" << -rep.ideal->b << "+√" << rep.ideal->D
         << ")/2]";
    }
    if (r.input_class && *r.input_class == i) os << "   <- input";
    os << '\n';
  }
  if (r.evidence_level != EvidenceLevel::None) {
    os << "evidence (" << to_string(r.evidence_level) << ")\n";
    for (const PairEvidence& pe : r.evidence) {
      os << "  " << pe.i << " vs " << pe.j << ": "
         << (pe.z_witness ? "conjugate over Z" : "not conjugate over Z");
      if (pe.brute_force) {
        os << "; search |P| <= " << pe.brute_force->bound << ": "
           << (pe.brute_force->found() ? "witness" : "none");
      }
      if (pe.modular) os << "; " << pe.modular->verdict();
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace

std::string render(const GenusReport& report, OutputFormat format, bool color) {
  if (report.representatives.empty()) throw InternalError("report without representatives");
  switch (format) {
    case OutputFormat::Json: return to_json(report).dump(2) + "\n";
    case OutputFormat::Csv:
      return std::string(kSurveyCsvHeader) + "\n" + csv_line(survey_row(report)) + "\n";
    case OutputFormat::Table: return table_report(report, color);
  }
  throw InternalError("unknown format");
}

std::string render(const std::vector<SurveyRow>& rows, OutputFormat format, bool color) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::Json: {
      Json arr = Json::array();
      for (const SurveyRow& row : rows) arr.push_back(row_json(row));
      os << arr.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv:
      os << kSurveyCsvHeader << '\n';
      for (const SurveyRow& row : rows) os << csv_line(row) << '\n';
      break;
    case OutputFormat::Table:
      os << std::right << std::setw(5) << "t" << std::setw(4) << "n" << std::setw(8) << "D"
         << std::setw(8) << "D0" << std::setw(4) << "f" << "  " << std::left << std::setw(10)
         << "geometry" << std::setw(18) << "branch" << std::right << std::setw(8) << "h_field"
         << std::setw(8) << "h_order" << std::setw(7) << "genus" << "  rigid\n";
      for (const SurveyRow& row : rows) {
        std::ostringstream genus_cell;
        genus_cell << std::setw(7) << row.genus;
        os << std::right << std::setw(5) << row.t << std::setw(4) << row.n << std::setw(8)
           << row.D << std::setw(8) << row.D0 << std::setw(4) << row.f << "  " << std::left
           << std::setw(10) << to_string(row.geometry) << std::setw(18) << to_string(row.branch)
           << std::right << std::setw(8) << row.h_field << std::setw(8) << row.h_order
           << paint(genus_cell.str(), row.rigid, color) << "  " << (row.rigid ? "yes" : "no")
           << '\n';
      }
      break;
  }
  return os.str();
}

}  // namespace solgenus
