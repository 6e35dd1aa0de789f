#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <doctest.h>

#include "support/generators.hpp"
#include "wellclust/engine.hpp"
#include "wellclust/graph.hpp"
#include "wellclust/io.hpp"

using namespace wellclust;
using testsupport::clusters_of;

namespace {

// Scratch file under the system temp dir, deleted on scope exit.
struct TempFile {
  std::string path;

  explicit TempFile(const std::string& name, const std::string& content = "")
      : path((std::filesystem::temp_directory_path() / ("wellclust_" + name)).string()) {
    std::ofstream out(path, std::ios::binary);
    out << content;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(in), "missing file: " << path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string thrown_message(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("edge list ingest") {
  SUBCASE("plain pairs build a path") {
    TempFile f("path.tsv", "0\t1\n1\t2\n");
    EdgeListReport report;
    const Graph g = read_edge_list(f.path, &report);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 2);
    CHECK(report.lines_read == 2);
    CHECK(report.edge_records == 2);
    CHECK(report.self_loops_dropped == 0);
    CHECK(report.duplicates_dropped == 0);
  }
  SUBCASE("comments, blanks, space separators, and CRLF endings") {
    TempFile f("messy.tsv", "# header\r\n\r\n0 1\r\n% more\n1 2\n  \n");
    EdgeListReport report;
    const Graph g = read_edge_list(f.path, &report);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 2);
    CHECK(report.lines_read == 6);
    CHECK(report.edge_records == 2);
  }
  SUBCASE("self loops and duplicates are counted, not kept") {
    TempFile f("dups.tsv", "0 0\n0 1\n1 0\n0 1\n");
    EdgeListReport report;
    const Graph g = read_edge_list(f.path, &report);
    CHECK(g.num_edges() == 1);
    CHECK(report.edge_records == 4);
    CHECK(report.self_loops_dropped == 1);
    CHECK(report.duplicates_dropped == 2);
  }
  SUBCASE("an isolated top id widens the vertex space") {
    TempFile f("wide.tsv", "0 1\n0 9\n");
    const Graph g = read_edge_list(f.path);
    CHECK(g.num_vertices() == 10);
    CHECK(g.degree(5) == 0);
  }
  SUBCASE("malformed line is reported with its number") {
    TempFile f("bad.tsv", "0 1\nhello\n");
    CHECK_THROWS_AS(read_edge_list(f.path), std::runtime_error);
    const std::string msg = thrown_message([&] { read_edge_list(f.path); });
    CHECK(contains(msg, ":2:"));
    CHECK(contains(msg, "expected two integer endpoints"));
  }
  SUBCASE("lone endpoint and trailing junk are malformed") {
    TempFile lone("lone.tsv", "0\n");
    CHECK_THROWS_AS(read_edge_list(lone.path), std::runtime_error);
    TempFile junk("junk.tsv", "0 1 extra\n");
    CHECK_THROWS_AS(read_edge_list(junk.path), std::runtime_error);
  }
  SUBCASE("negative ids are rejected") {
    TempFile f("neg.tsv", "0 1\n-2 3\n");
    const std::string msg = thrown_message([&] { read_edge_list(f.path); });
    CHECK(contains(msg, ":2:"));
    CHECK(contains(msg, "negative vertex id"));
  }
  SUBCASE("missing file") {
    const std::string msg =
        thrown_message([] { read_edge_list("/nonexistent/graph.tsv"); });
    CHECK(contains(msg, "cannot open graph file"));
  }
}

TEST_CASE("clustering ingest") {
  SUBCASE("rows group by cluster id") {
    TempFile f("clusters.tsv", "0\t7\n1\t7\n2\t9\n");
    const Clustering c = read_clustering(f.path);
    const auto clusters = clusters_of(c);
    REQUIRE(clusters.size() == 2);
    CHECK(clusters[0] == std::vector<VertexId>{0, 1});
    CHECK(clusters[1] == std::vector<VertexId>{2});
  }
  SUBCASE("empty file means empty clustering") {
    TempFile f("empty.tsv", "");
    CHECK(read_clustering(f.path).assignments.empty());
  }
  SUBCASE("a vertex listed twice is an error") {
    TempFile f("twice.tsv", "0\t1\n0\t2\n");
    CHECK_THROWS_AS(read_clustering(f.path), std::runtime_error);
    const std::string msg = thrown_message([&] { read_clustering(f.path); });
    CHECK(contains(msg, ":2:"));
    CHECK(contains(msg, "duplicate vertex 0"));
  }
  SUBCASE("malformed row") {
    TempFile f("badrow.tsv", "0\tseven\n");
    const std::string msg = thrown_message([&] { read_clustering(f.path); });
    CHECK(contains(msg, ":1:"));
  }
  SUBCASE("missing file") {
    const std::string msg =
        thrown_message([] { read_clustering("/nonexistent/clusters.tsv"); });
    CHECK(contains(msg, "cannot open clustering file"));
  }
}

TEST_CASE("clustering output is canonical") {
  SUBCASE("ids renumber in order of smallest member") {
    Clustering c;
    c.assignments = {{0, 42}, {1, 42}, {2, 7}};
    TempFile f("out.tsv");
    write_clustering(c, f.path);
    CHECK(slurp(f.path) == "0\t0\n1\t0\n2\t1\n");
  }
  SUBCASE("empty clustering writes an empty file") {
    TempFile f("out_empty.tsv");
    write_clustering(Clustering{}, f.path);
    CHECK(slurp(f.path).empty());
  }
  SUBCASE("unwritable path") {
    CHECK_THROWS_AS(write_clustering(Clustering{}, "/nonexistent/dir/out.tsv"),
                    std::runtime_error);
  }
  SUBCASE("round trip preserves the partition and restabilizes bytes") {
    std::mt19937_64 rng(91);
    for (int round = 0; round < 10; ++round) {
      Clustering original = testsupport::random_clustering(rng, 40, 6);
      for (auto& [v, cluster] : original.assignments) cluster = cluster * 37 - 5;

      TempFile first("rt_a.tsv");
      write_clustering(original, first.path);
      const Clustering reread = read_clustering(first.path);
      CHECK(clusters_of(reread) == clusters_of(original));

      TempFile second("rt_b.tsv");
      write_clustering(reread, second.path);
      CHECK(slurp(second.path) == slurp(first.path));
    }
  }
}

TEST_CASE("criterion flag grammar") {
  CHECK(parse_criterion("log10").kind == CriterionKind::log10);
  CHECK(parse_criterion("log2").kind == CriterionKind::log2);
  CHECK(parse_criterion("sqrt").kind == CriterionKind::sqrt);
  const Criterion linear = parse_criterion("linear:0.5");
  CHECK(linear.kind == CriterionKind::linear);
  CHECK(linear.k == doctest::Approx(0.5).epsilon(1e-12));

  for (const std::string bad :
       {"", "linear", "linear:", "linear:-1", "linear:0", "linear:0.5x", "log10x", "banana"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_criterion(bad), std::invalid_argument);
  }

  for (const Criterion c : {Criterion{CriterionKind::log10, 1.0}, Criterion{CriterionKind::log2, 1.0},
                            Criterion{CriterionKind::sqrt, 1.0}, Criterion{CriterionKind::linear, 0.25}}) {
    const Criterion back = parse_criterion(criterion_to_string(c));
    CHECK(back.kind == c.kind);
    if (c.kind == CriterionKind::linear) CHECK(back.k == doctest::Approx(c.k).epsilon(1e-12));
  }
}

TEST_CASE("manifest runs end to end") {
  TempFile graph("run_graph.tsv", "0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n");
  TempFile clusters("run_clusters.tsv", "0\t9\n1\t9\n2\t9\n3\t9\n4\t9\n5\t9\n");

  SUBCASE("wcc with stats") {
    TempFile out("run_out.tsv");
    TempFile stats_file("run_stats.txt");
    RunManifest manifest;
    manifest.graph_path = graph.path;
    manifest.clustering_path = clusters.path;
    manifest.output_path = out.path;
    manifest.stats_path = stats_file.path;

    const RunStats stats = execute_run(manifest);
    CHECK(stats.output_clusters == 2);
    CHECK(slurp(out.path) == "0\t0\n1\t0\n2\t0\n3\t1\n4\t1\n5\t1\n");

    const std::string text = slurp(stats_file.path);
    CHECK(contains(text, "mode:wcc\n"));
    CHECK(contains(text, "criterion:log10\n"));
    CHECK(contains(text, "graph_edge_records:6\n"));
    CHECK(contains(text, "input_clusters:1\n"));
    CHECK(contains(text, "ccr_components:2\n"));
    CHECK(contains(text, "output_clusters:2\n"));
    CHECK(contains(text, "vertices_clustered_in:6\n"));
    CHECK(contains(text, "vertices_clustered_out:6\n"));
    CHECK(contains(text, "vertices_discarded:0\n"));
    CHECK(contains(text, "mincut_calls:2\n"));
    CHECK(contains(text, "wall_seconds:"));
    CHECK(contains(text, "lineage.0:9\n"));
    CHECK(contains(text, "lineage.1:9\n"));
  }
  SUBCASE("cm reports its detector settings") {
    TempFile out("run_out_cm.tsv");
    TempFile stats_file("run_stats_cm.txt");
    RunManifest manifest;
    manifest.graph_path = graph.path;
    manifest.clustering_path = clusters.path;
    manifest.output_path = out.path;
    manifest.stats_path = stats_file.path;
    manifest.config.mode = Mode::cm;
    manifest.config.cda.resolution = 0.5;

    const RunStats stats = execute_run(manifest);
    CHECK(stats.output_clusters == 2);
    CHECK(slurp(out.path) == "0\t0\n1\t0\n2\t0\n3\t1\n4\t1\n5\t1\n");
    CHECK(contains(slurp(stats_file.path), "cda_resolution:0.5\n"));
  }
  SUBCASE("skipping the stats file") {
    TempFile out("run_out_ns.tsv");
    RunManifest manifest;
    manifest.graph_path = graph.path;
    manifest.clustering_path = clusters.path;
    manifest.output_path = out.path;
    CHECK(execute_run(manifest).output_clusters == 2);
  }
  SUBCASE("failures name their stage") {
    RunManifest manifest;
    manifest.graph_path = "/nonexistent/graph.tsv";
    manifest.clustering_path = clusters.path;
    manifest.output_path = "ignored.tsv";
    const std::string msg = thrown_message([&] { execute_run(manifest); });
    CHECK(contains(msg, "graph ingest"));
    CHECK(contains(msg, "cannot open graph file"));

    manifest.graph_path = graph.path;
    manifest.clustering_path = "/nonexistent/clusters.tsv";
    CHECK(contains(thrown_message([&] { execute_run(manifest); }), "clustering ingest"));
  }
  SUBCASE("empty paths are rejected up front") {
    RunManifest manifest;
    CHECK_THROWS_AS(execute_run(manifest), std::invalid_argument);
  }
}

TEST_CASE("command line wrapper maps outcomes to exit codes") {
  TempFile graph("cli_graph.tsv", "0 1\n1 2\n0 2\n");
  TempFile clusters("cli_clusters.tsv", "0\t0\n1\t0\n2\t0\n");

  const auto run = [](std::vector<const char*> args) {
    args.insert(args.begin(), "wellclust");
    return run_cli(static_cast<int>(args.size()), args.data());
  };

  SUBCASE("success") {
    TempFile out("cli_out.tsv");
    CHECK(run({"--graph", graph.path.c_str(), "--clusters", clusters.path.c_str(), "--out",
               out.path.c_str(), "--threads", "1"}) == 0);
    CHECK(slurp(out.path) == "0\t0\n1\t0\n2\t0\n");
  }
  SUBCASE("help is not an error") {
    CHECK(run({"--help"}) == 0);
  }
  SUBCASE("missing required flag") {
    CHECK(run({"--graph", graph.path.c_str()}) == 2);
  }
  SUBCASE("unparsable criterion") {
    TempFile out("cli_out_bad.tsv");
    CHECK(run({"--graph", graph.path.c_str(), "--clusters", clusters.path.c_str(), "--out",
               out.path.c_str(), "--criterion", "banana"}) == 2);
  }
  SUBCASE("runtime failure") {
    TempFile out("cli_out_rf.tsv");
    CHECK(run({"--graph", "/nonexistent/graph.tsv", "--clusters", clusters.path.c_str(), "--out",
               out.path.c_str()}) == 1);
  }
}
