// SPDX-License-Identifier: Apache-2.0

#include "leftmost/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace leftmost {

namespace {

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream iss(line);
  std::vector<std::string> toks;
  std::string t;
  while (iss >> t) {
    toks.push_back(t);
  }
  return toks;
}

bool parse_index(const std::string& tok, Index& out) {
  char* end = nullptr;
  const long long v = std::strtoll(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0') {
    return false;
  }
  out = static_cast<Index>(v);
  return true;
}

bool parse_real(const std::string& tok, double& out) {
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return end != tok.c_str() && *end == '\0';
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

MmHeader parse_mm_header(const std::string& line) {
  const std::vector<std::string> toks = tokens_of(line);
  if (toks.empty() || to_lower(toks[0]) != "%%matrixmarket") {
    throw MatrixMarketError("missing %%MatrixMarket banner", 1);
  }
  if (toks.size() != 5) {
    throw MatrixMarketError("banner must have 5 fields", 1);
  }
  if (to_lower(toks[1]) != "matrix") {
    throw MatrixMarketError("unsupported object '" + toks[1] + "'", 1);
  }
  if (to_lower(toks[2]) != "coordinate") {
    throw MatrixMarketError("unsupported format '" + toks[2] + "'", 1);
  }

  MmHeader h;
  const std::string field = to_lower(toks[3]);
  if (field == "real") {
    h.field = MmHeader::Field::real;
  } else if (field == "integer") {
    h.field = MmHeader::Field::integer;
  } else if (field == "pattern") {
    h.field = MmHeader::Field::pattern;
  } else if (field == "complex") {
    throw MatrixMarketError("field 'complex' is not supported", 1);
  } else {
    throw MatrixMarketError("unknown field '" + toks[3] + "'", 1);
  }

  const std::string sym = to_lower(toks[4]);
  if (sym == "general") {
    h.symmetry = MmHeader::Symmetry::general;
  } else if (sym == "symmetric") {
    h.symmetry = MmHeader::Symmetry::symmetric;
  } else if (sym == "skew-symmetric") {
    h.symmetry = MmHeader::Symmetry::skew_symmetric;
  } else if (sym == "hermitian") {
    throw MatrixMarketError("symmetry 'hermitian' is not supported", 1);
  } else {
    throw MatrixMarketError("unknown symmetry '" + toks[4] + "'", 1);
  }
  return h;
}

CsrMatrix read_matrix_market(std::istream& in) {
  std::string line;
  long line_no = 0;

  if (!std::getline(in, line)) {
    throw MatrixMarketError("empty input", 1);
  }
  line_no = 1;
  const MmHeader header = parse_mm_header(line);

  // Comments and blank lines may precede the size line.
  Index n_rows = 0;
  Index n_cols = 0;
  Index n_entries = 0;
  for (;;) {
    if (!std::getline(in, line)) {
      throw MatrixMarketError("missing size line", line_no + 1);
    }
    ++line_no;
    if (blank(line) || line[0] == '%') {
      continue;
    }
    const std::vector<std::string> toks = tokens_of(line);
    if (toks.size() != 3 || !parse_index(toks[0], n_rows) ||
        !parse_index(toks[1], n_cols) || !parse_index(toks[2], n_entries)) {
      throw MatrixMarketError("malformed size line '" + line + "'", line_no);
    }
    if (n_rows < 0 || n_cols < 0 || n_entries < 0) {
      throw MatrixMarketError("negative size", line_no);
    }
    if (static_cast<double>(n_entries) >
        static_cast<double>(n_rows) * static_cast<double>(n_cols)) {
      throw MatrixMarketError("declared entry count exceeds matrix capacity",
                              line_no);
    }
    break;
  }

  // The size line is validated; reserving by the declared count is now safe.
  std::vector<Triplet> trips;
  const bool expand = header.symmetry != MmHeader::Symmetry::general;
  trips.reserve(static_cast<std::size_t>(expand ? 2 * n_entries : n_entries));

  Index seen = 0;
  while (seen < n_entries) {
    if (!std::getline(in, line)) {
      throw MatrixMarketError(
          "unexpected end of file: " + std::to_string(seen) + " of " +
              std::to_string(n_entries) + " entries read",
          line_no + 1);
    }
    ++line_no;
    if (blank(line) || line[0] == '%') {
      continue;
    }
    const std::vector<std::string> toks = tokens_of(line);
    const std::size_t expected =
        header.field == MmHeader::Field::pattern ? 2u : 3u;
    if (toks.size() != expected) {
      throw MatrixMarketError("expected " + std::to_string(expected) +
                                  " fields, got " + std::to_string(toks.size()),
                              line_no);
    }
    Index i = 0;
    Index j = 0;
    if (!parse_index(toks[0], i) || !parse_index(toks[1], j)) {
      throw MatrixMarketError("malformed index in '" + line + "'", line_no);
    }
    if (i < 1 || i > n_rows || j < 1 || j > n_cols) {
      throw MatrixMarketError("index (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ") outside " +
                                  std::to_string(n_rows) + "x" +
                                  std::to_string(n_cols),
                              line_no);
    }
    double v = 1.0;
    if (header.field != MmHeader::Field::pattern &&
        !parse_real(toks[2], v)) {
      throw MatrixMarketError("malformed value '" + toks[2] + "'", line_no);
    }
    trips.push_back({i - 1, j - 1, v});
    if (expand && i != j) {
      const double mirrored =
          header.symmetry == MmHeader::Symmetry::skew_symmetric ? -v : v;
      trips.push_back({j - 1, i - 1, mirrored});
    }
    ++seen;
  }

  // Anything after the declared entries must be comment or whitespace.
  while (std::getline(in, line)) {
    ++line_no;
    if (!blank(line) && line[0] != '%') {
      throw MatrixMarketError("unexpected data after " +
                                  std::to_string(n_entries) + " entries",
                              line_no);
    }
  }

  return csr_from_triplets(n_rows, n_cols, trips);
}

CsrMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  return read_matrix_market(in);
}

void write_matrix_market(const CsrMatrix& a, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.n_rows << " " << a.n_cols << " " << a.nnz() << "\n";
  char buf[64];
  for (Index r = 0; r < a.n_rows; ++r) {
    const Index end = a.row_ptr[static_cast<std::size_t>(r) + 1];
    for (Index k = a.row_ptr[static_cast<std::size_t>(r)]; k < end; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g",
                    a.values[static_cast<std::size_t>(k)]);
      out << (r + 1) << " " << (a.col_idx[static_cast<std::size_t>(k)] + 1)
          << " " << buf << "\n";
    }
  }
  if (!out) {
    throw std::runtime_error("write failed");
  }
}

void write_matrix_market(const CsrMatrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  write_matrix_market(a, out);
}

CsrMatrix symmetrize(const CsrMatrix& a) {
  if (a.n_rows != a.n_cols) {
    throw std::invalid_argument("symmetrize: matrix must be square");
  }
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(2 * a.nnz()));
  for (Index r = 0; r < a.n_rows; ++r) {
    const Index end = a.row_ptr[static_cast<std::size_t>(r) + 1];
    for (Index k = a.row_ptr[static_cast<std::size_t>(r)]; k < end; ++k) {
      const Index c = a.col_idx[static_cast<std::size_t>(k)];
      const double v = a.values[static_cast<std::size_t>(k)];
      trips.push_back({r, c, v});
      trips.push_back({c, r, v});
    }
  }
  return csr_from_triplets(a.n_rows, a.n_cols, trips);
}

}  // namespace leftmost
