#include "besov/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace besov::io {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(bool(in), ErrorKind::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(bool(out), ErrorKind::InvalidInput, "cannot write '" + path + "'");
  out << text;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double to_double(const std::string& s, std::size_t row) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidInput, "row " + std::to_string(row) + ": '" + s + "' is not a number");
  }
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table parse_table(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (t.header.empty()) {
      t.header = split(line);
      continue;
    }
    ++row;
    auto cells = split(line);
    require(cells.size() == t.header.size(), ErrorKind::InvalidInput,
            "row " + std::to_string(row) + " has " + std::to_string(cells.size()) + " columns, expected " +
                std::to_string(t.header.size()));
    std::vector<double> vals;
    vals.reserve(cells.size());
    for (auto& c : cells) vals.push_back(to_double(c, row));
    t.rows.push_back(std::move(vals));
  }
  require(!t.header.empty(), ErrorKind::InvalidInput, "empty table");
  return t;
}

// Recovers the grid from the coordinate columns of a sample table.
GridSpec grid_from_table(const Table& t, int dim) {
  std::size_t rows = t.rows.size();
  int n = dim == 1 ? int(rows) : int(std::lround(std::sqrt(double(rows))));
  require(n >= 2 && (dim == 1 || std::size_t(n) * n == rows), ErrorKind::InvalidInput,
          "sample count " + std::to_string(rows) + " does not form a square grid");
  double x0 = t.rows[0][0];
  double x1 = dim == 1 ? t.rows[1][0] : t.rows[1][1];
  double h = x1 - x0;
  require(h > 0, ErrorKind::InvalidInput, "coordinates must increase");
  GridSpec g(dim, -x0, n);
  require(std::abs(g.spacing() - h) <= 1e-9 * h, ErrorKind::InvalidInput,
          "coordinates are not of the form -X + j h with h = 2X/n");
  for (std::size_t i = 0; i < rows; ++i) {
    Point p = g.position(i);
    for (int a = 0; a < dim; ++a)
      require(std::abs(t.rows[i][a] - p[a]) <= 1e-9 * g.extent, ErrorKind::InvalidInput,
              "row " + std::to_string(i + 1) + " is off the grid or out of order");
  }
  return g;
}

std::string sample_table(const GridSpec& g, std::span<const cplx> values, bool freq) {
  std::string out = g.dim == 1 ? (freq ? "xi,re,im\n" : "x,re,im\n") : (freq ? "xi,eta,re,im\n" : "x,y,re,im\n");
  out.reserve(out.size() + values.size() * 64);
  for (std::size_t i = 0; i < values.size(); ++i) {
    Point p = freq ? g.frequency(i) : g.position(i);
    out += num(p[0]);
    if (g.dim == 2) out += "," + num(p[1]);
    out += "," + num(values[i].real()) + "," + num(values[i].imag()) + "\n";
  }
  return out;
}

std::vector<cplx> values_of(const Table& t, int dim) {
  std::vector<cplx> v;
  v.reserve(t.rows.size());
  for (auto& r : t.rows) v.emplace_back(r[dim], r[dim + 1]);
  return v;
}

int dim_of(const Table& t) {
  if (t.header.size() == 3) return 1;
  if (t.header.size() == 4) return 2;
  fail(ErrorKind::InvalidInput, "expected 3 or 4 columns, found " + std::to_string(t.header.size()));
}

}  // namespace

std::string signal_csv(const SampledSignal& f) { return sample_table(f.grid, f.samples, false); }

SampledSignal parse_signal_csv(const std::string& text) {
  Table t = parse_table(text);
  int dim = dim_of(t);
  GridSpec g = grid_from_table(t, dim);
  return SampledSignal(g, values_of(t, dim));
}

void write_signal_csv(const std::string& path, const SampledSignal& f) { write_text(path, signal_csv(f)); }
SampledSignal read_signal_csv(const std::string& path) { return parse_signal_csv(read_text(path)); }

void write_kernel_archive(const std::string& stem, const Kernel& g) {
  write_text(stem + "_space.csv", sample_table(g.grid, g.space, false));
  write_text(stem + "_freq.csv", sample_table(g.grid, g.freq, true));
  json j = {{"id", g.id}, {"meta", to_json(g.meta)}, {"grid", to_json(g.grid)}};
  write_text(stem + ".json", j.dump(2) + "\n");
}

Kernel read_kernel_archive(const std::string& stem) {
  json side = json::parse(read_text(stem + ".json"));
  GridSpec grid = grid_from_json(side.at("grid"));
  Table t = parse_table(read_text(stem + "_space.csv"));
  require(dim_of(t) == grid.dim, ErrorKind::InvalidInput, "space table dimension disagrees with the sidecar");
  require(grid_from_table(t, grid.dim) == grid, ErrorKind::InvalidInput, "space table grid disagrees with the sidecar");
  KernelRole role = kernel_role_from_string(side.at("meta").at("role").get<std::string>());
  // Metadata is re-measured rather than trusted; the stored spectrum must
  // agree with the transform of the stored samples.
  Kernel g = make_kernel_from_space(grid, values_of(t, grid.dim), role, side.value("id", stem));
  Table tf = parse_table(read_text(stem + "_freq.csv"));
  require(tf.rows.size() == g.freq.size(), ErrorKind::InvalidInput, "frequency table has the wrong length");
  auto stored = values_of(tf, grid.dim);
  double peak = 0, dev = 0;
  for (std::size_t i = 0; i < stored.size(); ++i) {
    peak = std::max(peak, std::abs(g.freq[i]));
    dev = std::max(dev, std::abs(stored[i] - g.freq[i]));
  }
  require(dev <= 1e-8 * std::max(peak, 1e-300), ErrorKind::InvalidKernel,
          "stored spectrum disagrees with the space samples (rel. dev " + num(dev / peak) + ")");
  return g;
}

std::string group_function_csv(const GroupFunction& F) {
  std::string out = F.grid.dim == 1 ? "j,t,x,re,im\n" : "j,t,x,y,re,im\n";
  for (std::size_t m = 0; m < F.nodes(); ++m) {
    std::string lead = std::to_string(F.ladder.node_index(m)) + "," + num(F.scale(m)) + ",";
    const auto& col = F.columns[m];
    for (std::size_t i = 0; i < col.size(); ++i) {
      Point p = F.grid.position(i);
      out += lead + num(p[0]);
      if (F.grid.dim == 2) out += "," + num(p[1]);
      out += "," + num(col[i].real()) + "," + num(col[i].imag()) + "\n";
    }
  }
  return out;
}

std::string coefficient_csv(const CoeffField& c) {
  bool two = c.lattice.dim == 2;
  std::string out = two ? "c,j,k0,k1,re,im\n" : "c,j,k,re,im\n";
  for (const auto& e : c.entries) {
    out += std::to_string(e.c) + "," + std::to_string(e.j) + "," + std::to_string(e.k[0]);
    if (two) out += "," + std::to_string(e.k[1]);
    out += "," + num(e.value.real()) + "," + num(e.value.imag()) + "\n";
  }
  return out;
}

std::string scaling_csv(const std::vector<ScalingCheck>& rows) {
  std::string out = "space,side,z,r,predicted,measured,ratio\n";
  for (const auto& r : rows) {
    std::string z = num(r.z[0]);
    if (r.z[1] != 0) z += ";" + num(r.z[1]);
    out += std::string(to_string(r.space)) + "," + to_string(r.side) + "," + z + "," + num(r.r) + "," +
           num(r.predicted) + "," + num(r.measured) + "," + num(r.ratio()) + "\n";
  }
  return out;
}

namespace {
json jnum(double v) {
  if (std::isfinite(v)) return v;
  return num(v);  // JSON has no infinities
}
double jget(const json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInf;
    if (s == "-inf") return -kInf;
    fail(ErrorKind::InvalidInput, "expected a number, got '" + s + "'");
  }
  return j.get<double>();
}
}  // namespace

json to_json(const GridSpec& g) { return {{"dim", g.dim}, {"extent", g.extent}, {"n", g.n}}; }

json to_json(const ScaleLadder& l) {
  return {{"base", l.base}, {"m_min", l.m_min}, {"m_max", l.m_max}, {"nu", l.nu}};
}

json to_json(const NormParams& np) {
  return {{"s", np.s}, {"p", jnum(np.p)}, {"q", jnum(np.q)}, {"a", np.a},
          {"scale", to_string(np.scale)}, {"homogeneity", to_string(np.hom)}, {"variant", np.variant}};
}

json to_json(const KernelMeta& m) {
  return {{"L", m.L}, {"K", m.K}, {"N_dec", m.N_dec}, {"eps", m.eps}, {"role", to_string(m.role)}};
}

json to_json(const DecayProfile& d) {
  return {{"scale_slope", d.scale_slope}, {"spatial_order", d.spatial_order},
          {"window", {d.window[0], d.window[1]}}, {"residual", d.residual}};
}

json to_json(const NormReport& r) {
  json values = json::object(), ratios = json::object(), cross = json::object();
  for (auto [v, x] : r.values) values[std::to_string(v)] = jnum(x);
  for (auto [v, x] : r.ratios) ratios[std::to_string(v)] = jnum(x);
  for (auto [v, x] : r.cross_kernel) cross[std::to_string(v)] = jnum(x);
  return {{"params", to_json(r.params)}, {"values", values}, {"ratios", ratios},
          {"cross_kernel", cross}, {"kernel_ids", r.kernel_ids}, {"all_zero", r.all_zero}};
}

std::string norm_report_csv(const NormReport& r) {
  std::string out = "variant,value,ratio,cross_kernel\n";
  for (auto [v, x] : r.values) {
    auto rt = r.ratios.find(v);
    auto ck = r.cross_kernel.find(v);
    out += std::to_string(v) + "," + num(x) + "," + (rt != r.ratios.end() ? num(rt->second) : "") + "," +
           (ck != r.cross_kernel.end() ? num(ck->second) : "") + "\n";
  }
  return out;
}

GridSpec grid_from_json(const json& j) {
  GridSpec g(j.value("dim", 1), jget(j.at("extent")), j.at("n").get<int>());
  validate(g);
  return g;
}

ScaleLadder ladder_from_json(const json& j) {
  ScaleLadder l;
  l.base = j.value("base", 2.0);
  l.m_min = j.at("m_min").get<int>();
  l.m_max = j.at("m_max").get<int>();
  l.nu = j.value("nu", 8);
  require(l.base > 1, ErrorKind::Configuration, "ladder.base must exceed 1");
  require(l.nu >= 1, ErrorKind::Configuration, "ladder.nu must be at least 1");
  require(l.m_min <= l.m_max, ErrorKind::Configuration, "ladder.m_min must not exceed ladder.m_max");
  return l;
}

}  // namespace besov::io
