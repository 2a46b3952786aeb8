#include "catq/matrix_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace catq {
namespace {

[[noreturn]] void parse_error(std::size_t line, std::size_t column, const std::string& what) {
  throw Error(ErrorKind::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

double parse_double(std::string_view text, std::size_t line, std::size_t column) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    parse_error(line, column, "invalid number '" + std::string(text) + "'");
  return value;
}

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_whitespace(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw Error(ErrorKind::ParseError, "cannot format number");
  return std::string(buf, ptr);
}

CMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line()) parse_error(1, 1, "missing dimension line");
  const auto header = split_whitespace(line);
  if (header.size() != 1) parse_error(line_no, 1, "first line must hold the dimension n");
  const double n_value = parse_double(header[0].text, line_no, header[0].column);
  if (n_value < 1.0 || n_value != static_cast<double>(static_cast<long long>(n_value)))
    parse_error(line_no, header[0].column, "dimension must be a positive integer");
  const auto n = static_cast<Index>(n_value);

  CMatrix m(n, n);
  for (Index row = 0; row < n; ++row) {
    if (!next_line())
      parse_error(line_no + 1, 1,
                  "missing row " + std::to_string(row + 1) + " of " + std::to_string(n));
    const auto tokens = split_whitespace(line);
    if (static_cast<Index>(tokens.size()) != n)
      parse_error(line_no, 1,
                  "row " + std::to_string(row + 1) + " has " + std::to_string(tokens.size()) +
                      " entries, expected " + std::to_string(n));
    for (Index col = 0; col < n; ++col) {
      const Token& tok = tokens[static_cast<std::size_t>(col)];
      const auto comma = tok.text.find(',');
      if (comma == std::string_view::npos)
        parse_error(line_no, tok.column, "entry must be 're,im'");
      const double re = parse_double(tok.text.substr(0, comma), line_no, tok.column);
      const double im = parse_double(tok.text.substr(comma + 1), line_no, tok.column + comma + 1);
      m(row, col) = Complex(re, im);
    }
  }
  while (next_line())
    if (!split_whitespace(line).empty()) parse_error(line_no, 1, "trailing content after matrix");
  return m;
}

void write_matrix(std::ostream& out, const CMatrix& m) {
  require_dims(m.rows() == m.cols(), "write_matrix needs a square matrix");
  out << m.rows() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag());
    }
    out << '\n';
  }
}

CMatrix load_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + tmp.string() + "'");
    out << contents;
    if (!out) throw Error(ErrorKind::ParseError, "write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, target);
}

void save_hamiltonian(const std::string& path, const CMatrix& m) {
  std::ostringstream out;
  write_matrix(out, m);
  write_file_atomic(path, out.str());
}

}  // namespace catq
