#include "snpvscs/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "snpvscs/errors.hpp"

namespace snpvscs {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool is_missing(std::string_view cell) {
  return cell.empty() || cell == "NA" || cell == "na" || cell == "." || cell == "?";
}

double parse_real(std::string_view cell, std::size_t line, std::size_t column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError("expected a number, got '" + std::string(cell) + "'", line, column);
  }
  return v;
}

double parse_genotype(std::string_view cell, std::size_t line, std::size_t column) {
  if (cell == "0" || cell == "AA") return 0.0;
  if (cell == "1" || cell == "Aa" || cell == "aA") return 1.0;
  if (cell == "2" || cell == "aa") return 2.0;
  throw InvalidGenotype("invalid genotype '" + std::string(cell) + "' (line " + std::to_string(line) +
                        ", column " + std::to_string(column) + ")");
}

std::string real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Shortest text that reads back to the same double.
std::string shortest(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

GenotypeDataset read_dataset(std::istream& in, const FormatConfig& config) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      for (auto cell : split(line)) header.emplace_back(cell);
      break;
    }
  }
  if (header.empty()) throw ParseError("missing header row", line_no == 0 ? 1 : line_no, 1);
  const auto q = static_cast<std::size_t>(config.covariate_columns);
  if (config.covariate_columns < 0 || header.size() < 2 + q) {
    throw ParseError("header needs id, phenotype and " + std::to_string(q) + " covariate columns", line_no, 1);
  }
  const std::size_t p = header.size() - 2 - q;

  std::vector<double> ys, zs, xs;
  std::size_t rejected = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " cells, found " +
                           std::to_string(cells.size()),
                       line_no, std::min(cells.size(), header.size()) + 1);
    }
    bool missing = false;
    for (std::size_t c = 1; c < cells.size() && !missing; ++c) missing = is_missing(cells[c]);
    if (missing) {
      if (config.missing == MissingPolicy::fail) {
        throw MissingValue("row on line " + std::to_string(line_no) + " has a missing cell");
      }
      ++rejected;
      continue;
    }
    if (cells[1] == "0") {
      ys.push_back(0.0);
    } else if (cells[1] == "1") {
      ys.push_back(1.0);
    } else {
      throw ParseError("phenotype must be 0 or 1, got '" + std::string(cells[1]) + "'", line_no, 2);
    }
    for (std::size_t c = 0; c < q; ++c) zs.push_back(parse_real(cells[2 + c], line_no, 3 + c));
    for (std::size_t c = 0; c < p; ++c) xs.push_back(parse_genotype(cells[2 + q + c], line_no, 3 + q + c));
  }

  const auto n = static_cast<Eigen::Index>(ys.size());
  GenotypeDataset d;
  d.y = Eigen::Map<Eigen::VectorXd>(ys.data(), n);
  d.z = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      zs.data(), n, static_cast<Eigen::Index>(q));
  d.x = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      xs.data(), n, static_cast<Eigen::Index>(p));
  d.covariate_names.assign(header.begin() + 2, header.begin() + 2 + static_cast<std::ptrdiff_t>(q));
  d.snp_names.assign(header.begin() + 2 + static_cast<std::ptrdiff_t>(q), header.end());
  d.rows_rejected = rejected;
  d.validate();
  return d;
}

GenotypeDataset load_dataset(const std::filesystem::path& path, const FormatConfig& config) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open dataset " + path.string());
  return read_dataset(in, config);
}

void write_dataset(std::ostream& out, const GenotypeDataset& data) {
  out << "id,phenotype";
  for (const auto& c : data.covariate_names) out << ',' << c;
  for (const auto& s : data.snp_names) out << ',' << s;
  out << '\n';
  for (int i = 0; i < data.n(); ++i) {
    out << (i + 1) << ',' << static_cast<int>(data.y[i]);
    for (int c = 0; c < data.q(); ++c) out << ',' << shortest(data.z(i, c));
    for (int j = 0; j < data.p(); ++j) out << ',' << static_cast<int>(data.x(i, j));
    out << '\n';
  }
}

void write_vscs(std::ostream& out, const Vscs& vscs, std::uint64_t fingerprint) {
  out << "# snpvscs-vscs alpha=" << real17(vscs.alpha()) << " p=" << vscs.p() << " n=" << vscs.n()
      << " q=" << vscs.q() << " fingerprint=" << hex64(fingerprint)
      << " full_loglik=" << real17(vscs.full_fit().loglik) << '\n';
  out << "mask,size,d_stat,loglik,aic,bic,converged,separation\n";
  for (const auto& e : vscs.entries()) {
    out << e.mask.bits() << ',' << e.mask.size() << ',' << real17(e.d_stat) << ',' << real17(e.loglik) << ','
        << real17(e.aic) << ',' << real17(e.bic) << ',' << (e.converged ? 1 : 0) << ','
        << (e.separation ? 1 : 0) << '\n';
  }
}

LoadedVscs read_vscs(std::istream& in) {
  std::string meta;
  if (!std::getline(in, meta) || meta.rfind("# snpvscs-vscs", 0) != 0) {
    throw ParseError("missing VSCS metadata line", 1, 1);
  }
  double alpha = 0.0, full_loglik = 0.0;
  int p = -1, n = 0, q = 0;
  std::uint64_t fingerprint = 0;
  std::istringstream fields(meta.substr(14));
  std::string kv;
  while (fields >> kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    if (key == "alpha") alpha = std::stod(value);
    else if (key == "p") p = std::stoi(value);
    else if (key == "n") n = std::stoi(value);
    else if (key == "q") q = std::stoi(value);
    else if (key == "fingerprint") fingerprint = std::stoull(value, nullptr, 16);
    else if (key == "full_loglik") full_loglik = std::stod(value);
  }
  if (p < 0) throw ParseError("VSCS metadata lacks p", 1, 1);
  std::string line;
  std::getline(in, line);
  std::size_t line_no = 2;
  std::vector<VscsEntry> entries;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 8) throw ParseError("expected 8 VSCS columns", line_no, 1);
    std::uint64_t bits = 0;
    const auto [ptr, ec] = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), bits);
    if (ec != std::errc() || ptr != cells[0].data() + cells[0].size()) {
      throw ParseError("bad mask value", line_no, 1);
    }
    VscsEntry e;
    e.mask = ModelMask(p, bits);
    e.d_stat = parse_real(cells[2], line_no, 3);
    e.loglik = parse_real(cells[3], line_no, 4);
    e.aic = parse_real(cells[4], line_no, 5);
    e.bic = parse_real(cells[5], line_no, 6);
    e.converged = cells[6] == "1";
    e.separation = cells[7] == "1";
    entries.push_back(e);
  }
  GlmFit full;
  full.mask = ModelMask::full(p);
  full.loglik = full_loglik;
  full.converged = true;
  return {Vscs(alpha, p, n, q, std::move(entries), std::move(full)), fingerprint};
}

}  // namespace snpvscs
