#include "asyncbool/text_format.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace asyncbool {

const char* code_name(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::kSyntax: return "syntax";
    case ParseErrorCode::kBadHeader: return "bad-header";
    case ParseErrorCode::kWidthMismatch: return "width-mismatch";
    case ParseErrorCode::kDuplicateRow: return "duplicate-row";
    case ParseErrorCode::kMissingRow: return "missing-row";
    case ParseErrorCode::kNotBijective: return "not-bijective";
    case ParseErrorCode::kCountMismatch: return "count-mismatch";
    case ParseErrorCode::kNonIncreasingTimes: return "non-increasing-times";
    case ParseErrorCode::kBadPeriod: return "bad-period";
    case ParseErrorCode::kNotProgressive: return "not-progressive";
  }
  return "unknown";
}

ParseError::ParseError(ParseErrorCode code, std::size_t line, std::size_t column,
                       const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message + " [" + code_name(code) + "]"),
      code_(code),
      line_(line),
      column_(column) {}

namespace {

// A slice of the input with its 1-based source position.
struct Token {
  std::string_view text;
  std::size_t line = 0;
  std::size_t column = 0;
};

[[noreturn]] void fail(ParseErrorCode code, const Token& at, const std::string& message) {
  throw ParseError(code, at.line, at.column, message);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

Token trim(Token t) {
  std::size_t b = 0;
  while (b < t.text.size() && is_space(t.text[b])) ++b;
  std::size_t e = t.text.size();
  while (e > b && is_space(t.text[e - 1])) --e;
  return {t.text.substr(b, e - b), t.line, t.column + b};
}

Token slice(const Token& t, std::size_t pos, std::size_t len = std::string_view::npos) {
  return {t.text.substr(pos, len), t.line, t.column + pos};
}

// Non-blank lines with comments removed.
std::vector<Token> content_lines(std::string_view text) {
  std::vector<Token> out;
  std::size_t line_no = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Token t = trim({line, line_no, 1});
    if (!t.text.empty()) out.push_back(t);
    ++line_no;
    start = end + 1;
  }
  return out;
}

std::size_t end_line(std::string_view text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1;
}

std::uint32_t parse_bits(const Token& t, unsigned width, const char* what) {
  if (t.text.empty()) fail(ParseErrorCode::kSyntax, t, std::string("expected ") + what);
  for (char c : t.text) {
    if (c != '0' && c != '1') {
      fail(ParseErrorCode::kSyntax, t, std::string("invalid bit string '") + std::string(t.text) + "'");
    }
  }
  if (t.text.size() != width) {
    fail(ParseErrorCode::kWidthMismatch, t,
         std::string(what) + " '" + std::string(t.text) + "' has width " +
             std::to_string(t.text.size()) + ", expected " + std::to_string(width));
  }
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < t.text.size(); ++i) {
    if (t.text[i] == '1') bits |= 1u << i;
  }
  return bits;
}

unsigned parse_width_value(const Token& t, unsigned lo, unsigned hi) {
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc{} || ptr != t.text.data() + t.text.size() || value < lo || value > hi) {
    fail(ParseErrorCode::kBadHeader, t,
         "width must be an integer in " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  return value;
}

// Parses "key=<value>" pairs separated by whitespace, e.g. "n=2 m=1".
std::map<std::string, unsigned> parse_header(const Token& line,
                                             std::initializer_list<const char*> keys) {
  std::map<std::string, unsigned> out;
  std::size_t pos = 0;
  while (pos < line.text.size()) {
    while (pos < line.text.size() && is_space(line.text[pos])) ++pos;
    if (pos >= line.text.size()) break;
    auto end = pos;
    while (end < line.text.size() && !is_space(line.text[end])) ++end;
    const Token item = slice(line, pos, end - pos);
    const auto eq = item.text.find('=');
    if (eq == std::string_view::npos) fail(ParseErrorCode::kBadHeader, item, "expected key=value");
    const std::string key(item.text.substr(0, eq));
    if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return key == k; }) == keys.end()) {
      fail(ParseErrorCode::kBadHeader, item, "unexpected header key '" + key + "'");
    }
    if (out.count(key)) fail(ParseErrorCode::kBadHeader, item, "repeated header key '" + key + "'");
    out[key] = parse_width_value(slice(item, eq + 1), 1, kMaxWidth);
    pos = end;
  }
  for (const char* k : keys) {
    if (!out.count(k)) fail(ParseErrorCode::kBadHeader, line, std::string("missing header key '") + k + "'");
  }
  return out;
}

// Table rows "<in> -> <out>" for lines [begin, end). Every input must appear once.
std::vector<std::uint32_t> parse_rows(const std::vector<Token>& lines, std::size_t begin,
                                      std::size_t end, unsigned width, const Token& missing_at) {
  const std::size_t count = std::size_t{1} << width;
  std::vector<std::optional<std::uint32_t>> rows(count);
  for (std::size_t k = begin; k < end; ++k) {
    const Token& line = lines[k];
    const auto arrow = line.text.find("->");
    if (arrow == std::string_view::npos) fail(ParseErrorCode::kSyntax, line, "expected '<bits> -> <bits>'");
    const Token lhs = trim(slice(line, 0, arrow));
    const Token rhs = trim(slice(line, arrow + 2));
    const auto in = parse_bits(lhs, width, "input");
    const auto out = parse_bits(rhs, width, "output");
    if (rows[in]) fail(ParseErrorCode::kDuplicateRow, lhs, "duplicate input " + std::string(lhs.text));
    rows[in] = out;
  }
  std::vector<std::uint32_t> out(count);
  for (std::uint32_t mu = 0; mu < count; ++mu) {
    if (!rows[mu]) fail(ParseErrorCode::kMissingRow, missing_at, "missing input " + to_bits(State(width, mu)));
    out[mu] = *rows[mu];
  }
  return out;
}

std::vector<std::uint32_t> parse_table_lines(const std::vector<Token>& lines, std::size_t begin,
                                             std::size_t end, std::size_t eof_line,
                                             unsigned& width) {
  if (begin >= end) fail(ParseErrorCode::kBadHeader, {"", eof_line, 1}, "missing header 'n=<width>'");
  width = parse_header(lines[begin], {"n"}).at("n");
  const Token missing_at = end < lines.size() ? Token{"", lines[end].line, 1} : Token{"", eof_line, 1};
  return parse_rows(lines, begin + 1, end, width, missing_at);
}

StateBijection bijection_from_rows(const std::vector<Token>& lines, std::size_t begin,
                                   std::size_t end, std::size_t eof_line) {
  unsigned width = 0;
  auto fwd = parse_table_lines(lines, begin, end, eof_line, width);
  std::vector<bool> hit(fwd.size(), false);
  for (std::size_t k = begin + 1; k < end; ++k) {
    const Token& line = lines[k];
    const Token rhs = trim(slice(line, line.text.find("->") + 2));
    const auto out = parse_bits(rhs, width, "output");
    if (hit[out]) fail(ParseErrorCode::kNotBijective, rhs, "output " + std::string(rhs.text) + " is repeated");
    hit[out] = true;
  }
  return StateBijection(width, std::move(fwd));
}

std::string render_rows(unsigned width, std::span<const std::uint32_t> outputs) {
  std::ostringstream out;
  out << "n=" << width << "\n";
  for (std::uint32_t mu = 0; mu < outputs.size(); ++mu) {
    out << to_bits(State(width, mu)) << " -> " << to_bits(State(width, outputs[mu])) << "\n";
  }
  return out.str();
}

}  // namespace

TruthTable parse_truth_table(std::string_view text) {
  const auto lines = content_lines(text);
  unsigned width = 0;
  auto outputs = parse_table_lines(lines, 0, lines.size(), end_line(text), width);
  return TruthTable(width, std::move(outputs));
}

std::string render_truth_table(const TruthTable& phi) { return render_rows(phi.width(), phi.outputs()); }

StateBijection parse_bijection(std::string_view text) {
  const auto lines = content_lines(text);
  return bijection_from_rows(lines, 0, lines.size(), end_line(text));
}

std::string render_bijection(const StateBijection& h) { return render_rows(h.width(), h.forward()); }

ParamFamily parse_family(std::string_view text) {
  const auto lines = content_lines(text);
  const auto eof = end_line(text);
  if (lines.empty()) fail(ParseErrorCode::kBadHeader, {"", eof, 1}, "missing header 'n=<n> m=<m>'");
  const auto header = parse_header(lines[0], {"n", "m"});
  const unsigned n = header.at("n");
  const unsigned m = header.at("m");

  std::vector<std::optional<TruthTable>> members(std::size_t{1} << m);
  std::size_t k = 1;
  while (k < lines.size()) {
    const Token& block = lines[k];
    if (block.text.substr(0, 7) != "lambda=") fail(ParseErrorCode::kSyntax, block, "expected 'lambda=<bits>'");
    const Token bits = trim(slice(block, 7));
    const auto lambda = parse_bits(bits, m, "parameter");
    if (members[lambda]) fail(ParseErrorCode::kDuplicateRow, bits, "duplicate parameter " + std::string(bits.text));
    auto end = k + 1;
    while (end < lines.size() && lines[end].text.substr(0, 7) != "lambda=") ++end;
    const Token missing_at = end < lines.size() ? Token{"", lines[end].line, 1} : Token{"", eof, 1};
    members[lambda] = TruthTable(n, parse_rows(lines, k + 1, end, n, missing_at));
    k = end;
  }
  std::vector<TruthTable> tables;
  for (std::uint32_t lambda = 0; lambda < members.size(); ++lambda) {
    if (!members[lambda]) {
      fail(ParseErrorCode::kMissingRow, {"", eof, 1}, "missing parameter " + to_bits(State(m, lambda)));
    }
    tables.push_back(std::move(*members[lambda]));
  }
  return ParamFamily(n, m, std::move(tables));
}

std::string render_family(const ParamFamily& f) {
  std::ostringstream out;
  out << "n=" << f.state_width() << " m=" << f.param_width() << "\n";
  for (std::uint32_t lambda = 0; lambda < f.size(); ++lambda) {
    out << "lambda=" << to_bits(State(f.param_width(), lambda)) << "\n";
    const auto rows = render_truth_table(f.member(lambda));
    out << rows.substr(rows.find('\n') + 1);
  }
  return out.str();
}

ProgressiveFunction parse_rho(std::string_view text) {
  const auto lines = content_lines(text);
  const Token eof{"", end_line(text), 1};
  // Fields may be spread over lines; each field is "key: value" and fields
  // are separated by ';' or line breaks.
  std::map<std::string, Token> fields;
  for (const auto& line : lines) {
    std::size_t pos = 0;
    while (pos <= line.text.size()) {
      auto semi = line.text.find(';', pos);
      if (semi == std::string_view::npos) semi = line.text.size();
      const Token field = trim(slice(line, pos, semi - pos));
      pos = semi + 1;
      if (field.text.empty()) continue;
      const auto colon = field.text.find(':');
      if (colon == std::string_view::npos) fail(ParseErrorCode::kSyntax, field, "expected 'key: value'");
      const std::string key(trim(slice(field, 0, colon)).text);
      if (key != "times" && key != "prefix" && key != "cycle" && key != "period") {
        fail(ParseErrorCode::kSyntax, field, "unknown field '" + key + "'");
      }
      if (fields.count(key)) fail(ParseErrorCode::kSyntax, field, "repeated field '" + key + "'");
      fields[key] = trim(slice(field, colon + 1));
    }
  }
  for (const char* key : {"times", "cycle", "period"}) {
    if (!fields.count(key)) fail(ParseErrorCode::kSyntax, eof, std::string("missing field '") + key + "'");
  }

  auto split = [](const Token& t) {
    std::vector<Token> items;
    if (t.text.empty()) return items;
    std::size_t pos = 0;
    while (pos <= t.text.size()) {
      auto comma = t.text.find(',', pos);
      if (comma == std::string_view::npos) comma = t.text.size();
      items.push_back(trim(slice(t, pos, comma - pos)));
      pos = comma + 1;
    }
    return items;
  };
  auto parse_time_at = [](const Token& t) {
    try {
      return parse_time(t.text);
    } catch (const UsageError& e) {
      fail(ParseErrorCode::kSyntax, t, e.what());
    }
  };

  std::optional<unsigned> width;
  auto parse_masks = [&](const Token& t) {
    std::vector<UpdateMask> masks;
    for (const auto& item : split(t)) {
      if (!width) width = static_cast<unsigned>(item.text.size());
      if (*width == 0 || *width > kMaxWidth) fail(ParseErrorCode::kWidthMismatch, item, "mask width out of range");
      masks.emplace_back(*width, parse_bits(item, *width, "mask"));
    }
    return masks;
  };
  const Token prefix_field = fields.count("prefix") ? fields["prefix"] : Token{"", eof.line, 1};
  auto prefix = parse_masks(prefix_field);
  auto cycle = parse_masks(fields["cycle"]);
  if (cycle.empty()) fail(ParseErrorCode::kSyntax, fields["cycle"], "cycle must be nonempty");

  std::vector<Time> times;
  const auto time_items = split(fields["times"]);
  for (std::size_t k = 0; k < time_items.size(); ++k) {
    times.push_back(parse_time_at(time_items[k]));
    if (k > 0 && !(times[k - 1] < times[k])) {
      fail(ParseErrorCode::kNonIncreasingTimes, time_items[k], "times must be strictly increasing");
    }
  }
  if (times.size() != prefix.size() + cycle.size()) {
    fail(ParseErrorCode::kCountMismatch, fields["times"],
         "expected " + std::to_string(prefix.size() + cycle.size()) + " times, got " +
             std::to_string(times.size()));
  }
  const Time period = parse_time_at(fields["period"]);
  if (period <= Time(0) || !(times[prefix.size()] + period > times.back())) {
    fail(ParseErrorCode::kBadPeriod, fields["period"],
         "period must be positive and exceed the span of the cycle times");
  }
  LassoMaskSequence masks(std::move(prefix), std::move(cycle));
  if (!masks.is_progressive()) fail(ParseErrorCode::kNotProgressive, fields["cycle"], "cycle not progressive");
  return ProgressiveFunction(std::move(times), std::move(masks), period);
}

std::string render_rho(const ProgressiveFunction& rho) {
  auto join_masks = [](const std::vector<UpdateMask>& masks) {
    std::string out;
    for (std::size_t k = 0; k < masks.size(); ++k) out += (k ? "," : "") + to_bits(masks[k]);
    return out;
  };
  std::string times;
  for (std::size_t k = 0; k < rho.times().size(); ++k) times += (k ? "," : "") + to_string(rho.times()[k]);
  return "times: " + times + "; prefix: " + join_masks(rho.masks().prefix()) +
         "; cycle: " + join_masks(rho.masks().cycle()) + "; period: " + to_string(rho.period()) + "\n";
}

ConjugacyWitness parse_witness(std::string_view text) {
  const auto lines = content_lines(text);
  const auto eof = end_line(text);
  std::optional<std::size_t> h_at, h_prime_at;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (lines[k].text == "[h]") {
      if (h_at) fail(ParseErrorCode::kSyntax, lines[k], "repeated section [h]");
      h_at = k;
    } else if (lines[k].text == "[h_prime]") {
      if (h_prime_at) fail(ParseErrorCode::kSyntax, lines[k], "repeated section [h_prime]");
      h_prime_at = k;
    } else if (k == 0) {
      fail(ParseErrorCode::kSyntax, lines[k], "expected section header [h] or [h_prime]");
    }
  }
  if (!h_at || !h_prime_at) fail(ParseErrorCode::kSyntax, {"", eof, 1}, "witness needs [h] and [h_prime] sections");
  auto block = [&](std::size_t at) {
    const std::size_t other = at == *h_at ? *h_prime_at : *h_at;
    const std::size_t end = other > at ? other : lines.size();
    return bijection_from_rows(lines, at + 1, end, eof);
  };
  auto h = block(*h_at);
  auto h_prime = block(*h_prime_at);
  if (h.width() != h_prime.width()) {
    fail(ParseErrorCode::kWidthMismatch, lines[*h_prime_at], "h and h_prime widths differ");
  }
  return ConjugacyWitness{std::move(h), std::move(h_prime)};
}

std::string render_witness(const ConjugacyWitness& w) {
  return "[h]\n" + render_bijection(w.h) + "[h_prime]\n" + render_bijection(w.h_prime);
}

}  // namespace asyncbool
