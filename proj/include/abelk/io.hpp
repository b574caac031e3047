#pragma once

// Text format for group descriptions and witnesses, and the structured
// report emitted by the command-line tool.
//
// A document is a sequence of `key: value` statements separated by newlines
// or ';'. `#` starts a comment. Keys:
//   name:    starts a new group
//   torsion: trivial | countable | countable[2, 3] | [2, 4]
//   free:    {free: 2}
//            {rank1: [2^inf, 3^1]}
//            {cd: [[2^inf] x2, [] xomega]}
//            {tower: 2, prefix: [[[2,0],[0,1]]], period: [[[3,-10],[2,3]]], copies: 1}
//            {sum: [<free>, <free>]}
//   witness: {copies: 2, src: <free>, dst: <free>, map: [[1, 1/2], [0, 1]]}
// Supernatural entries are p^e with primes increasing and e a positive
// integer or `inf`.

#include "abelk/uginv.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace abelk {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

struct NamedGroup {
  std::string name;
  AbGroupDesc desc;
};

struct Document {
  std::vector<NamedGroup> groups;
  std::vector<Witness> witnesses;
};

/// Throws ParseError, or ValidationError for malformed towers.
Document parse_document(const std::string& text);
/// Exactly one group; throws ParseError otherwise.
NamedGroup parse_group_file(const std::string& text);
FreePart parse_free_spec(const std::string& text);

std::string emit_free(const FreePart& f);
std::string emit_torsion(const TorsionDesc& t);
std::string emit_group(const NamedGroup& g);
std::string emit_witness(const Witness& w);
std::string emit_document(const Document& d);

/// Throws std::runtime_error when the file cannot be read.
std::string read_file(const std::string& path);

struct VerdictLine {
  std::string label;
  std::string verdict;
  std::string evidence;
  friend bool operator==(const VerdictLine&, const VerdictLine&) = default;
};

struct Report {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<VerdictLine> verdicts;
  std::vector<std::string> notices;
  double timing_ms = 0;
  friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
/// One line per verdict plus notices; timing is left out so that the text is
/// reproducible.
std::string to_text(const Report& r);

}  // namespace abelk
