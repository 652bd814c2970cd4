#include "henderson/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace henderson {

Table parse_table(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a >> b) || (ls >> extra))
      throw TableError("table line " + std::to_string(lineno) + ": expected two columns");
    try {
      t.x.push_back(std::stod(a));
      t.y.push_back(std::stod(b));
    } catch (const std::exception&) {
      throw TableError("table line " + std::to_string(lineno) + ": not a number");
    }
    if (t.x.size() > 1 && !(t.x.back() > t.x[t.x.size() - 2]))
      throw TableError("table line " + std::to_string(lineno) + ": x not ascending");
  }
  if (t.x.size() < 2) throw TableError("table has fewer than two rows");
  return t;
}

Table read_table(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw TableError("cannot open table " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_table(ss.str());
}

GridFunction table_to_grid(const Table& t, const GridSpec& g) {
  const bool half = t.x.front() >= 0.0;
  GridFunction out(g);
  for (int k = 0; k < g.M(); ++k) {
    double x = half ? std::abs(g.x(k)) : g.x(k);
    auto it = std::lower_bound(t.x.begin(), t.x.end(), x - 1e-9 * g.h());
    if (it == t.x.end())
      throw TableError("table does not cover the grid extent");
    std::size_t i = static_cast<std::size_t>(it - t.x.begin());
    if (std::abs(t.x[i] - x) <= 1e-9 * g.h()) {
      out[k] = t.y[i];
      continue;
    }
    if (i == 0) throw TableError("table does not cover the grid extent");
    double a = t.x[i - 1], b = t.x[i];
    double ya = t.y[i - 1], yb = t.y[i];
    if (std::isinf(ya) || std::isinf(yb)) {
      out[k] = std::isinf(ya) ? ya : yb;
      continue;
    }
    double s = (x - a) / (b - a);
    out[k] = (1.0 - s) * ya + s * yb;
  }
  return out;
}

std::string format_table(const GridFunction& f, const std::vector<std::string>& header) {
  std::string out;
  for (const auto& h : header) out += "# " + h + "\n";
  char buf[96];
  for (int k = 0; k < f.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.10f %.17g\n", f.spec().x(k), f[k]);
    out += buf;
  }
  return out;
}

void write_table(const std::string& path, const GridFunction& f, const std::vector<std::string>& header) {
  std::ofstream o(path);
  if (!o) throw std::runtime_error("cannot write " + path);
  o << format_table(f, header);
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, data.data(), data.size());
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

}  // namespace henderson
