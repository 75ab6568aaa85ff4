// Copyright 2026 The SCGC Authors.
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

#include "scgc/data_io.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string_view>

#include "scgc/errors.h"
#include "scgc/random.h"

namespace scgc {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kReportFormat = "scgc-report-1";

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    if (end > pos) tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

template <typename T>
bool ParseNumber(std::string_view token, T& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::string Where(const fs::path& file, std::int64_t line) {
  return file.string() + ":" + std::to_string(line) + ": ";
}

std::ifstream OpenForRead(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::ofstream OpenForWrite(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

void FinishWrite(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw DataError("write failed for " + path.string());
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

DenseMatrix LoadFeatures(const fs::path& path) {
  std::ifstream in = OpenForRead(path);
  std::string line;
  std::int64_t line_no = 0;
  std::int64_t rows = -1, cols = -1;
  while (rows < 0 && std::getline(in, line)) {
    ++line_no;
    const auto tokens = SplitWhitespace(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2 || !ParseNumber(tokens[0], rows) ||
        !ParseNumber(tokens[1], cols) || rows < 0 || cols < 1) {
      throw DataError(Where(path, line_no) + "expected header \"N D\"");
    }
  }
  if (rows < 0) throw DataError(path.string() + ": missing header");
  DenseMatrix x(rows, cols);
  std::int64_t r = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = SplitWhitespace(line);
    if (tokens.empty()) continue;
    if (r >= rows) {
      throw DataError(Where(path, line_no) + "more rows than header's " +
                      std::to_string(rows));
    }
    if (static_cast<std::int64_t>(tokens.size()) != cols) {
      throw DataError(Where(path, line_no) + "expected " +
                      std::to_string(cols) + " values, found " +
                      std::to_string(tokens.size()));
    }
    for (std::int64_t c = 0; c < cols; ++c) {
      double v;
      if (!ParseNumber(tokens[c], v) || !std::isfinite(v)) {
        throw DataError(Where(path, line_no) + "bad value \"" +
                        std::string(tokens[c]) + "\"");
      }
      x(r, c) = v;
    }
    ++r;
  }
  if (r != rows) {
    throw DataError(path.string() + ": header declares " +
                    std::to_string(rows) + " rows, found " + std::to_string(r));
  }
  return x;
}

}  // namespace

std::vector<int> LoadLabels(const fs::path& path) {
  std::ifstream in = OpenForRead(path);
  std::vector<int> labels;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = Trim(line);
    if (body.empty()) continue;
    int v;
    if (!ParseNumber(body, v)) {
      throw DataError(Where(path, line_no) + "bad label \"" +
                      std::string(body) + "\"");
    }
    if (v < 0) throw DataError(Where(path, line_no) + "negative label");
    labels.push_back(v);
  }
  return labels;
}

DatasetBundle LoadDataset(const fs::path& dir) {
  for (const char* name : {"edges.txt", "features.txt", "labels.txt"}) {
    if (!fs::exists(dir / name)) {
      throw DataError("missing " + (dir / name).string());
    }
  }
  DatasetBundle bundle;
  bundle.name = dir.filename().string();
  if (bundle.name.empty()) bundle.name = dir.parent_path().filename().string();

  DenseMatrix x = LoadFeatures(dir / "features.txt");
  const auto n = static_cast<NodeId>(x.rows());

  std::vector<int> labels = LoadLabels(dir / "labels.txt");
  if (static_cast<NodeId>(labels.size()) != n) {
    throw DataError((dir / "labels.txt").string() + ": " +
                    std::to_string(labels.size()) + " labels for " +
                    std::to_string(n) + " nodes");
  }

  const fs::path edge_path = dir / "edges.txt";
  std::ifstream in = OpenForRead(edge_path);
  std::vector<Edge> edges;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    const auto tokens = SplitWhitespace(body);
    if (tokens.empty()) continue;
    ++bundle.edge_lines;
    std::int64_t u, v;
    if (tokens.size() != 2 || !ParseNumber(tokens[0], u) ||
        !ParseNumber(tokens[1], v)) {
      throw DataError(Where(edge_path, line_no) + "expected \"u v\"");
    }
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw DataError(Where(edge_path, line_no) + "node index out of range [0, " +
                      std::to_string(n) + ")");
    }
    if (u == v) {
      ++bundle.self_loops_skipped;
      continue;
    }
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), 1.0});
  }

  bundle.graph.adjacency = SparseAdjacency::FromEdges(n, edges);
  bundle.graph.attributes = std::move(x);
  const int classes =
      labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  bundle.graph.labels = std::move(labels);
  bundle.graph.num_classes = classes;
  bundle.expected_classes = classes;
  bundle.graph.Validate();
  return bundle;
}

void SaveDataset(const DatasetBundle& bundle, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create " + dir.string() + ": " + ec.message());
  const Graph& g = bundle.graph;
  {
    const fs::path path = dir / "edges.txt";
    std::ofstream out = OpenForWrite(path);
    for (const Edge& e : g.adjacency.UndirectedEdges()) {
      out << e.u << ' ' << e.v << '\n';
    }
    FinishWrite(out, path);
  }
  {
    const fs::path path = dir / "features.txt";
    std::ofstream out = OpenForWrite(path);
    out << FormatEmbeddings(g.attributes);
    FinishWrite(out, path);
  }
  {
    const fs::path path = dir / "labels.txt";
    std::ofstream out = OpenForWrite(path);
    if (g.labels.has_value()) {
      for (int l : *g.labels) out << l << '\n';
    }
    FinishWrite(out, path);
  }
}

void RowNormalizeFeatures(DenseMatrix& x) {
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double norm = x.row(i).norm();
    if (norm > 0.0) x.row(i) /= norm;
  }
}

void SbmSpec::Validate() const {
  if (blocks < 1 || nodes_per_block < 1) {
    throw ConfigError("SBM needs at least one block of one node");
  }
  if (!(p_out >= 0.0 && p_out <= p_in && p_in <= 1.0)) {
    throw ConfigError("SBM probabilities must satisfy 0 <= p_out <= p_in <= 1");
  }
  if (feature_dim < blocks) {
    throw ConfigError("SBM feature_dim must be >= blocks");
  }
  if (!std::isfinite(feature_shift)) throw ConfigError("bad SBM feature shift");
}

SbmSpec SbmSpec::Parse(const std::string& text) {
  SbmSpec spec;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string_view kv = Trim(item);
    if (kv.empty()) continue;
    const auto eq = kv.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("SBM spec item \"" + std::string(kv) + "\" lacks '='");
    }
    const std::string_view key = Trim(kv.substr(0, eq));
    const std::string_view value = Trim(kv.substr(eq + 1));
    bool ok = false;
    if (key == "blocks") {
      ok = ParseNumber(value, spec.blocks);
    } else if (key == "nodes" || key == "nodes_per_block") {
      ok = ParseNumber(value, spec.nodes_per_block);
    } else if (key == "p_in") {
      ok = ParseNumber(value, spec.p_in);
    } else if (key == "p_out") {
      ok = ParseNumber(value, spec.p_out);
    } else if (key == "dim" || key == "feature_dim") {
      ok = ParseNumber(value, spec.feature_dim);
    } else if (key == "shift" || key == "feature_shift") {
      ok = ParseNumber(value, spec.feature_shift);
    } else if (key == "seed") {
      ok = ParseNumber(value, spec.seed);
    } else {
      throw ConfigError("unknown SBM spec key \"" + std::string(key) + "\"");
    }
    if (!ok) {
      throw ConfigError("bad value for SBM spec key \"" + std::string(key) +
                        "\"");
    }
  }
  spec.Validate();
  return spec;
}

std::string SbmSpec::ToString() const {
  return "blocks=" + std::to_string(blocks) +
         ",nodes=" + std::to_string(nodes_per_block) +
         ",p_in=" + FormatDouble(p_in) + ",p_out=" + FormatDouble(p_out) +
         ",dim=" + std::to_string(feature_dim) +
         ",shift=" + FormatDouble(feature_shift) +
         ",seed=" + std::to_string(seed);
}

DatasetBundle GenerateSbm(const SbmSpec& spec) {
  spec.Validate();
  const NodeId n = spec.blocks * spec.nodes_per_block;
  std::vector<int> labels(n);
  for (NodeId i = 0; i < n; ++i) labels[i] = i / spec.nodes_per_block;

  auto graph_rng = MakeStream(spec.seed, StreamTag::kSbmGraph);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double p = labels[u] == labels[v] ? spec.p_in : spec.p_out;
      if (unit(graph_rng) < p) edges.push_back({u, v, 1.0});
    }
  }

  auto feature_rng = MakeStream(spec.seed, StreamTag::kSbmFeatures);
  std::normal_distribution<double> gauss(0.0, 1.0);
  DenseMatrix x(n, spec.feature_dim);
  for (NodeId i = 0; i < n; ++i) {
    for (int c = 0; c < spec.feature_dim; ++c) x(i, c) = gauss(feature_rng);
    x(i, labels[i]) += spec.feature_shift;
  }

  DatasetBundle bundle;
  bundle.name = "sbm";
  bundle.graph.adjacency = SparseAdjacency::FromEdges(n, edges);
  bundle.graph.attributes = std::move(x);
  bundle.graph.labels = std::move(labels);
  bundle.graph.num_classes = spec.blocks;
  bundle.expected_classes = spec.blocks;
  bundle.edge_lines = static_cast<std::int64_t>(edges.size());
  return bundle;
}

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

std::string FormatEmbeddings(const DenseMatrix& z) {
  std::string out = std::to_string(z.rows()) + " " + std::to_string(z.cols()) + "\n";
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
      if (j > 0) out += ' ';
      out += FormatDouble(z(i, j));
    }
    out += '\n';
  }
  return out;
}

void ExportEmbeddings(const DenseMatrix& z, const fs::path& path) {
  std::ofstream out = OpenForWrite(path);
  out << FormatEmbeddings(z);
  FinishWrite(out, path);
}

DenseMatrix LoadEmbeddings(const fs::path& path) {
  return LoadFeatures(path);
}

namespace {

std::string JoinDoubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ' ';
    out += FormatDouble(values[i]);
  }
  return out;
}

std::vector<double> ParseDoubles(const KeyValues& kv, const std::string& key) {
  for (const auto& [k, v] : kv) {
    if (k != key) continue;
    std::vector<double> out;
    for (std::string_view token : SplitWhitespace(v)) {
      double d;
      if (!ParseNumber(token, d)) {
        throw DataError("report key " + key + ": bad number \"" +
                        std::string(token) + "\"");
      }
      out.push_back(d);
    }
    return out;
  }
  throw DataError("report lacks key " + key);
}

}  // namespace

std::string FormatReport(const ClusteringReport& report,
                         const ReportMetadata& meta) {
  if (report.runs() < 1) throw DataError("report must contain at least one run");
  std::string out = "# SCGC clustering report\n";
  auto put = [&out](const std::string& key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  put("format", std::string(kReportFormat));
  put("runs", std::to_string(report.runs()));
  std::string seeds;
  for (std::size_t i = 0; i < meta.seeds.size(); ++i) {
    if (i > 0) seeds += ' ';
    seeds += std::to_string(meta.seeds[i]);
  }
  put("seeds", seeds);
  const std::pair<const char*, const MetricSummary*> metrics[] = {
      {"acc", &report.acc}, {"nmi", &report.nmi},
      {"ari", &report.ari}, {"f1", &report.f1}};
  for (const auto& [name, summary] : metrics) {
    put(name, JoinDoubles(summary->values));
    put(std::string(name) + ".mean", FormatDouble(summary->mean));
    put(std::string(name) + ".std", FormatDouble(summary->std));
  }
  put("metric.nmi_normalization", "arithmetic");
  put("metric.std_divisor", "n");
  for (const auto& [k, v] : meta.config) put("config." + k, v);
  for (const auto& [k, v] : meta.timing) put("timing." + k, v);
  return out;
}

void ExportReport(const ClusteringReport& report, const ReportMetadata& meta,
                  const fs::path& path) {
  const std::string text = FormatReport(report, meta);
  std::ofstream out = OpenForWrite(path);
  out << text;
  FinishWrite(out, path);
}

KeyValues ParseReport(const std::string& text) {
  KeyValues kv;
  std::stringstream ss(text);
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const std::string_view body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find(" = ");
    if (eq == std::string_view::npos) {
      throw DataError("report line " + std::to_string(line_no) +
                      ": expected \"key = value\"");
    }
    kv.emplace_back(std::string(Trim(body.substr(0, eq))),
                    std::string(Trim(body.substr(eq + 3))));
  }
  return kv;
}

KeyValues ReadReportFile(const fs::path& path) {
  std::ifstream in = OpenForRead(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseReport(buffer.str());
}

ClusteringReport ReportFromKeyValues(const KeyValues& kv) {
  const std::vector<double> acc = ParseDoubles(kv, "acc");
  const std::vector<double> nmi = ParseDoubles(kv, "nmi");
  const std::vector<double> ari = ParseDoubles(kv, "ari");
  const std::vector<double> f1 = ParseDoubles(kv, "f1");
  if (acc.empty() || nmi.size() != acc.size() || ari.size() != acc.size() ||
      f1.size() != acc.size()) {
    throw DataError("report metric arrays are empty or differ in length");
  }
  std::vector<RunMetrics> runs;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    runs.push_back({acc[i], nmi[i], ari[i], f1[i]});
  }
  ClusteringReport report = Aggregate(runs);
  // Keep the stored aggregates verbatim.
  const std::pair<const char*, MetricSummary*> metrics[] = {
      {"acc", &report.acc}, {"nmi", &report.nmi},
      {"ari", &report.ari}, {"f1", &report.f1}};
  for (const auto& [name, summary] : metrics) {
    summary->mean = ParseDoubles(kv, std::string(name) + ".mean").at(0);
    summary->std = ParseDoubles(kv, std::string(name) + ".std").at(0);
  }
  return report;
}

}  // namespace scgc
