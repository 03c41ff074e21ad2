#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "solgenus/genus.hpp"

namespace solgenus {

enum class OutputFormat { Json, Csv, Table };

OutputFormat parse_format(std::string_view text);

using Json = nlohmann::ordered_json;

/// Integers below 2^53 in magnitude are JSON numbers; larger ones are decimal
/// strings so that no consumer silently rounds them.
Json int_json(const Int& v);
Json matrix_json(const IntMat2& m);
Json form_json(const BQForm& q);
Json witness_json(const std::optional<ConjugacyWitness>& w);
Json modular_json(const ProfiniteEvidence& ev);
Json to_json(const GenusReport& report);

/// One cell of the (t, n) survey grid.
struct SurveyRow {
  Int t, n, D, D0, f;
  GeometryLabel geometry;
  TheoremBranch branch;
  std::size_t h_field, h_order, genus;
  bool rigid;
};

SurveyRow survey_row(const GenusReport& report);

enum class DetFilter { Both, Plus, Minus };
enum class SurveyScope { Sol, All };

struct SurveyOptions {
  long tmax = 10;
  DetFilter det = DetFilter::Both;
  SurveyScope scope = SurveyScope::Sol;
};

/// Rows sorted by (t, n). The grid is sharded across `workers` threads; the
/// output does not depend on the worker count.
std::vector<SurveyRow> survey(const SurveyOptions& options, unsigned workers);

inline constexpr std::string_view kSurveyCsvHeader =
    "t,n,D,D0,f,geometry,branch,h_field,h_order,genus,rigid";

std::string render(const GenusReport& report, OutputFormat format, bool color = false);
std::string render(const std::vector<SurveyRow>& rows, OutputFormat format, bool color = false);

}  // namespace solgenus
