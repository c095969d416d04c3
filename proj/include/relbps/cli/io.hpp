#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "relbps/congruence.hpp"
#include "relbps/dtlink.hpp"
#include "relbps/matrices.hpp"
#include "relbps/series.hpp"

namespace relbps::cli {

/// Malformed user data (exit code 3).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Files that cannot be read or written (exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical "p/q" form: lowest terms, sign on the numerator, "/q" omitted when q = 1.
std::string format_rational(const Rational& q);

/// Accepts "[+-]digits" or "[+-]digits/digits" with a nonzero denominator.
Rational parse_rational(std::string_view text);

SequenceKind parse_sequence_kind(std::string_view name);

/// {"kind": ..., "w": int, "values": ["p/q", ...]}
InvariantSequence sequence_from_json(const nlohmann::json& doc);
nlohmann::json sequence_to_json(const InvariantSequence& seq);

InvariantSequence load_sequence(const std::filesystem::path& path);

/// TSV with header "i\tj\tvalue", stored entries in (i, j) order.
void write_matrix_tsv(std::ostream& out, const DivisorMatrix& m);

/// TSV with header "n\tm\tvalue", rows in (n, m) order.
void write_dt_tsv(std::ostream& out, const DTTable& table);

nlohmann::json case_to_json(const CongruenceCase& c, Lemma lemma);

/// Per-report block of the "summary" object.
nlohmann::json report_summary(const CongruenceReport& report);

}  // namespace relbps::cli
