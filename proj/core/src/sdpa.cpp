#include "genus1/sdpa.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "genus1/error.hpp"
#include "genus1/format.hpp"

namespace genus1 {

namespace {

void write_entries(std::ostream& out, std::size_t matno, const SymMatrix& m, double sign) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = sign * m(i, j);
      if (v == 0.0) continue;
      out << matno << " 1 " << (i + 1) << ' ' << (j + 1) << ' ' << format_exact(v) << '\n';
    }
  }
}

// Next non-comment, non-blank line; false at EOF.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '"' || line[pos] == '*') continue;
    return true;
  }
  return false;
}

// SDPA allows "{", "}", "(", ")" and "," as separators in header lines.
std::string strip_punct(std::string s) {
  for (char& c : s) {
    if (c == '{' || c == '}' || c == '(' || c == ')' || c == ',') c = ' ';
  }
  return s;
}

}  // namespace

void write_sdpa(std::ostream& out, const PencilProblem& problem) {
  problem.validate();
  const std::size_t m = problem.num_vars();
  out << m << '\n' << 1 << '\n' << problem.dim() << '\n';
  for (std::size_t i = 0; i < m; ++i) {
    if (i) out << ' ';
    out << format_exact(problem.objective.empty() ? 0.0 : problem.objective[i]);
  }
  out << '\n';
  write_entries(out, 0, problem.constant, -1.0);
  for (std::size_t i = 0; i < m; ++i) write_entries(out, i + 1, problem.coefficients[i], 1.0);
}

std::string write_sdpa(const PencilProblem& problem) {
  std::ostringstream out;
  write_sdpa(out, problem);
  return out.str();
}

PencilProblem read_sdpa(std::istream& in) {
  std::string line;
  auto header_int = [&](const char* what) {
    if (!next_line(in, line)) throw Error(ErrorCode::ParseError, std::string("missing ") + what);
    std::istringstream ls(strip_punct(line));
    long v = -1;
    if (!(ls >> v) || v < 0) throw Error(ErrorCode::ParseError, std::string("bad ") + what + ": " + line);
    return static_cast<std::size_t>(v);
  };
  const std::size_t m = header_int("variable count");
  const std::size_t nblocks = header_int("block count");
  if (nblocks != 1) throw Error(ErrorCode::ParseError, "only single-block files are supported");
  const std::size_t n = header_int("block size");

  PencilProblem p;
  p.constant = SymMatrix(n);
  p.coefficients.assign(m, SymMatrix(n));
  p.objective.assign(m, 0.0);

  std::size_t read = 0;
  while (read < m) {
    if (!next_line(in, line)) throw Error(ErrorCode::ParseError, "truncated objective row");
    std::istringstream ls(strip_punct(line));
    std::string tok;
    while (read < m && ls >> tok) p.objective[read++] = parse_number(tok);
  }
  while (next_line(in, line)) {
    std::istringstream ls(line);
    long matno = 0, block = 0, i = 0, j = 0;
    std::string value;
    if (!(ls >> matno >> block >> i >> j >> value)) throw Error(ErrorCode::ParseError, "bad entry line: " + line);
    if (block != 1 || matno < 0 || static_cast<std::size_t>(matno) > m || i < 1 || j < 1 ||
        static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n) {
      throw Error(ErrorCode::ParseError, "entry out of range: " + line);
    }
    const double v = parse_number(value);
    if (matno == 0) {
      p.constant.set(i - 1, j - 1, -v);
    } else {
      p.coefficients[matno - 1].set(i - 1, j - 1, v);
    }
  }
  return p;
}

PencilProblem read_sdpa_string(const std::string& text) {
  std::istringstream in(text);
  return read_sdpa(in);
}

}  // namespace genus1
