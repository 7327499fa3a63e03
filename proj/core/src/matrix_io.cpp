// Copyright 2026 The cartan-synth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cartan/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cartan/errors.hpp"

namespace cartan {

namespace {

double to_double(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw ParseError("bad matrix entry '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Complex parse_complex(std::string_view token) {
  if (token.empty()) throw ParseError("empty matrix entry");
  if (token.back() != 'j' && token.back() != 'i') return {to_double(token, token), 0.0};
  const std::string_view body = token.substr(0, token.size() - 1);
  // The imaginary part starts at the last sign that is neither leading nor
  // part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    const char ch = body[k];
    if ((ch == '+' || ch == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) {
    if (body.empty() || body == "+") return {0.0, 1.0};
    if (body == "-") return {0.0, -1.0};
    return {0.0, to_double(body, token)};
  }
  const std::string_view re = body.substr(0, split);
  std::string_view im = body.substr(split);
  double imv;
  if (im == "+") {
    imv = 1.0;
  } else if (im == "-") {
    imv = -1.0;
  } else {
    imv = to_double(im, token);
  }
  return {to_double(re, token), imv};
}

std::string format_complex(Complex z) {
  char buf[96];
  const double im = z.imag();
  if (im == 0.0 && !std::signbit(im)) {
    std::snprintf(buf, sizeof(buf), "%.17g", z.real());
  } else {
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", z.real(), im);
  }
  return buf;
}

Matrix read_matrix(std::istream& in) {
  std::string line;
  int n = -1;
  Eigen::Index dim = 0;
  Matrix m;
  Eigen::Index row = 0;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> toks;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (n < 0) {
      if (toks.size() != 1) {
        throw ParseError("line " + std::to_string(line_no) + ": expected the qubit count");
      }
      int v = 0;
      const auto r = std::from_chars(toks[0].data(), toks[0].data() + toks[0].size(), v);
      if (r.ec != std::errc() || r.ptr != toks[0].data() + toks[0].size() || v < 1 ||
          v > 14) {
        throw ParseError("line " + std::to_string(line_no) + ": bad qubit count '" +
                         toks[0] + "'");
      }
      n = v;
      dim = Eigen::Index{1} << n;
      m.resize(dim, dim);
      continue;
    }
    if (row >= dim) throw ParseError("line " + std::to_string(line_no) + ": too many rows");
    if (static_cast<Eigen::Index>(toks.size()) != dim) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(dim) + " entries, found " +
                       std::to_string(toks.size()));
    }
    for (Eigen::Index col = 0; col < dim; ++col) {
      try {
        m(row, col) = parse_complex(toks[static_cast<std::size_t>(col)]);
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    ++row;
  }
  if (n < 0) throw ParseError("matrix input is empty");
  if (row != dim) {
    throw ParseError("expected " + std::to_string(dim) + " rows, found " + std::to_string(row));
  }
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_matrix(in);
}

Matrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  const int n = qubits_for_dim(m.rows());
  if (m.rows() != m.cols()) throw InvalidArgument("write_matrix needs a square matrix");
  out << n << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_complex(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  write_matrix(out, m);
  if (!out) throw InvalidArgument("write to '" + path + "' failed");
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream out;
  write_matrix(out, m);
  return out.str();
}

}  // namespace cartan
