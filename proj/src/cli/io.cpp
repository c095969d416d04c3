#include "relbps/cli/io.hpp"

#include <fstream>
#include <ostream>
#include <regex>

namespace relbps::cli {

std::string format_rational(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  static const std::regex pattern(R"(([+-]?)([0-9]+)(?:/([0-9]+))?)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, pattern))
    throw InputError("malformed rational '" + std::string(text) + "'");
  Integer num(m[2].str());
  Integer den(m[3].matched ? m[3].str() : std::string("1"));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  if (m[1].str() == "-") num = -num;
  Rational out(num, den);
  out.canonicalize();
  return out;
}

SequenceKind parse_sequence_kind(std::string_view name) {
  for (auto kind : {SequenceKind::LocalGW, SequenceKind::LocalBPS, SequenceKind::RelativeGW,
                    SequenceKind::RelativeBPS})
    if (to_string(kind) == name) return kind;
  throw InputError("unknown sequence kind '" + std::string(name) + "'");
}

InvariantSequence sequence_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("sequence document must be a JSON object");
  for (const char* key : {"kind", "w", "values"})
    if (!doc.contains(key)) throw InputError(std::string("sequence is missing '") + key + "'");
  if (!doc["kind"].is_string()) throw InputError("'kind' must be a string");
  if (!doc["w"].is_number_integer()) throw InputError("'w' must be an integer");
  if (!doc["values"].is_array()) throw InputError("'values' must be an array");

  const auto kind = parse_sequence_kind(doc["kind"].get<std::string>());
  const auto w = doc["w"].get<std::int64_t>();
  if (w < 1) throw InputError("'w' must be >= 1, got " + std::to_string(w));
  std::vector<Rational> values;
  values.reserve(doc["values"].size());
  for (const auto& v : doc["values"]) {
    if (!v.is_string()) throw InputError("sequence values must be strings of the form \"p/q\"");
    values.push_back(parse_rational(v.get<std::string>()));
  }
  return {kind, w, std::move(values)};
}

nlohmann::json sequence_to_json(const InvariantSequence& seq) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : seq.values()) values.push_back(format_rational(v));
  return {{"kind", std::string(to_string(seq.kind()))}, {"w", seq.w()}, {"values", values}};
}

InvariantSequence load_sequence(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return sequence_from_json(doc);
}

void write_matrix_tsv(std::ostream& out, const DivisorMatrix& m) {
  out << "i\tj\tvalue\n";
  for (std::int64_t i = 1; i <= m.size(); ++i)
    for (const auto& e : m.row(i)) out << i << '\t' << e.col << '\t' << format_rational(e.value) << '\n';
}

void write_dt_tsv(std::ostream& out, const DTTable& table) {
  out << "n\tm\tvalue\n";
  for (const auto& v : table.values) out << v.n << '\t' << v.m << '\t' << v.value.get_str() << '\n';
}

nlohmann::json case_to_json(const CongruenceCase& c, Lemma lemma) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, value] : c.parameters) params[name] = value;
  return {{"lemma", std::string(to_string(lemma))},
          {"parameters", params},
          {"lhs", c.lhs.get_str()},
          {"rhs", c.rhs.get_str()},
          {"modulus", c.modulus.get_str()},
          {"holds", c.holds}};
}

nlohmann::json report_summary(const CongruenceReport& report) {
  nlohmann::json side = nlohmann::json::object();
  for (const auto& [name, count] : report.side_check_failures) side[name] = count;
  return {{"grid", report.grid},
          {"total_cases", report.total_cases},
          {"failures", report.failures.size()},
          {"side_check_failures", side},
          {"passed", report.passed()}};
}

}  // namespace relbps::cli
