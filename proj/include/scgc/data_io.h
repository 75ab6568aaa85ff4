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

// Dataset files, the synthetic block-model generator, and the embedding and
// report text formats.
//
// Dataset directory layout:
//   edges.txt     one "u v" pair of 0-based node ids per line, each
//                 undirected edge listed once; '#' starts a comment.
//                 Duplicate and reversed lines are merged; self-loop lines
//                 are skipped and counted.
//   features.txt  header "N D", then N lines of D reals separated by single
//                 spaces.
//   labels.txt    N lines, one integer class id per line.
//
// Embedding file: header "rows cols", then one line per row.
//
// Report file: one "key = value" per line, arrays as space-separated
// values, '#' comments. Keys:
//   format                    scgc-report-1
//   runs                      number of runs
//   seeds                     per-run seeds
//   acc, nmi, ari, f1         per-run values
//   <metric>.mean/.std        aggregates (population std)
//   metric.nmi_normalization  arithmetic
//   config.<name>             every setting used for the runs
//   timing.<name>             wall-clock figures; excluded when comparing
//                             reports for determinism

#ifndef SCGC_DATA_IO_H_
#define SCGC_DATA_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "scgc/graph.h"
#include "scgc/metrics.h"

namespace scgc {

struct DatasetBundle {
  std::string name;
  Graph graph;
  int expected_classes = 0;
  std::int64_t edge_lines = 0;          // non-comment lines in edges.txt
  std::int64_t self_loops_skipped = 0;  // "i i" lines dropped on load
};

// Throws DataError naming the file and line on any problem.
DatasetBundle LoadDataset(const std::filesystem::path& dir);

// Writes the three dataset files into `dir` (created if needed).
void SaveDataset(const DatasetBundle& bundle, const std::filesystem::path& dir);

// Scales each attribute row to unit l2 norm; all-zero rows are left alone.
void RowNormalizeFeatures(DenseMatrix& x);

struct SbmSpec {
  int blocks = 4;
  int nodes_per_block = 50;
  double p_in = 0.3;
  double p_out = 0.02;
  int feature_dim = 16;
  double feature_shift = 1.0;
  std::uint64_t seed = 0;

  // Throws ConfigError unless 0 <= p_out <= p_in <= 1, sizes are positive
  // and feature_dim >= blocks.
  void Validate() const;
  // Parses "blocks=4,nodes=50,p_in=0.3,p_out=0.02,dim=16,shift=1,seed=0";
  // omitted keys keep their defaults.
  static SbmSpec Parse(const std::string& text);
  std::string ToString() const;
};

// Planted-partition graph. Node i belongs to block i / nodes_per_block;
// each pair is linked with probability p_in inside a block and p_out
// across. Features of block c are Gaussian(feature_shift * e_c, I).
DatasetBundle GenerateSbm(const SbmSpec& spec);

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double value);

std::string FormatEmbeddings(const DenseMatrix& z);
void ExportEmbeddings(const DenseMatrix& z, const std::filesystem::path& path);
DenseMatrix LoadEmbeddings(const std::filesystem::path& path);

// Labels file (one integer per line), shared by datasets and `eval`.
std::vector<int> LoadLabels(const std::filesystem::path& path);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct ReportMetadata {
  KeyValues config;                  // emitted as config.<key>
  std::vector<std::uint64_t> seeds;  // one per run
  KeyValues timing;                  // emitted as timing.<key>
};

// Throws DataError if the report has no runs.
std::string FormatReport(const ClusteringReport& report,
                         const ReportMetadata& meta);
void ExportReport(const ClusteringReport& report, const ReportMetadata& meta,
                  const std::filesystem::path& path);

// Ordered key/value pairs of a report document.
KeyValues ParseReport(const std::string& text);
KeyValues ReadReportFile(const std::filesystem::path& path);
// Rebuilds the metrics part of a parsed report.
ClusteringReport ReportFromKeyValues(const KeyValues& kv);

}  // namespace scgc

#endif  // SCGC_DATA_IO_H_
