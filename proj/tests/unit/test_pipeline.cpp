#include <doctest.h>

#include <sstream>

#include "clusim/corpus.hpp"
#include "clusim/errors.hpp"
#include "clusim/evaluation.hpp"
#include "clusim/pipeline.hpp"
#include "clusim/table_io.hpp"

using namespace clusim;

namespace {

Schema two_field_schema(ScMode mode = ScMode::binary) {
  Schema s;
  s.fields.push_back({"name", 1.0, ValidityRule::parse("alphabetic"), 0.8});
  s.fields.push_back({"city", 1.0, ValidityRule::parse("alphabetic"), 0.8});
  s.metric = StringMetric::from_name("jaro");
  s.sc_mode = mode;
  return s;
}

std::vector<Record> corpus_records(const Corpus& c) { return select_records(c.table, c.schema, "corpus"); }

std::string cluster_text(const Clustering& c) {
  std::ostringstream out;
  write_clusters(out, c);
  return out.str();
}

}  // namespace

TEST_CASE("parse_method") {
  CHECK(parse_method("cluster") == Method::cluster_similarity);
  CHECK(parse_method("cluster_similarity") == Method::cluster_similarity);
  CHECK(parse_method("direct") == Method::direct);
  CHECK_THROWS_AS(parse_method("fuzzy"), ConfigError);
  CHECK(to_string(Method::direct) == "direct");
}

TEST_CASE("identical rows collapse under both methods") {
  const auto schema = two_field_schema();
  const std::vector<Record> records = {{0, {"Martha", "Leeds"}}, {1, {"Martha", "Leeds"}}, {2, {"Oscar", "Rome"}}};
  for (auto method : {Method::cluster_similarity, Method::direct}) {
    const auto r = run_dedup(records, schema, method, 0.8);
    CHECK(r.clustering == Clustering({{0, 1}, {2}}));
    REQUIRE(r.audit.size() == 1);
    CHECK(r.audit[0].a == 0);
    CHECK(r.audit[0].b == 1);
    CHECK(r.audit[0].similarity == 1.0);
  }
}

TEST_CASE("AB / A / B field values") {
  Schema schema;
  schema.fields.push_back({"v", 1.0, ValidityRule::parse("nonempty"), 0.8});
  schema.metric = StringMetric::from_name("jaro");
  const std::vector<Record> records = {{0, {"AB"}}, {1, {"A"}}, {2, {"B"}}};

  RecordScorer cluster(records, schema, Method::cluster_similarity);
  RecordScorer direct(records, schema, Method::direct);
  CHECK(cluster(0, 1) == 1.0);
  CHECK(cluster(1, 2) == 0.0);
  CHECK(cluster(0, 2) == 0.0);
  CHECK(direct(0, 1) == doctest::Approx(0.8333333333));
  CHECK(direct(0, 2) == 0.0);

  const auto a = run_dedup(records, schema, Method::cluster_similarity, 0.8).clustering;
  const auto b = run_dedup(records, schema, Method::direct, 0.8).clustering;
  CHECK(a == Clustering({{0, 1}, {2}}));
  CHECK(a == b);
}

TEST_CASE("invalid and empty values do not contribute") {
  const auto schema = two_field_schema();
  const std::vector<Record> records = {{0, {"Martha", "123"}}, {1, {"Martha", ""}}, {2, {"", "Paris"}}};
  const auto r = run_dedup(records, schema, Method::cluster_similarity, 0.8);
  CHECK(r.clustering == Clustering({{0, 1}, {2}}));
  const RecordScorer scorer(records, schema, Method::cluster_similarity);
  const auto ctx = scorer.context(0, 1);
  CHECK(ctx.normalizer == 1.0);
  CHECK(ctx.fields[1].k == 0);
  CHECK(scorer(0, 2) == 0.0);  // no field valid on both sides
}

TEST_CASE("run_dedup contract checks") {
  const auto schema = two_field_schema();
  const std::vector<Record> wrong_id = {{1, {"a", "b"}}};
  const std::vector<Record> wrong_arity = {{0, {"a"}}};
  const std::vector<Record> fine = {{0, {"a", "b"}}};
  CHECK_THROWS_AS(run_dedup(wrong_id, schema, Method::direct, 0.8), ContractViolation);
  CHECK_THROWS_AS(run_dedup(wrong_arity, schema, Method::direct, 0.8), ContractViolation);
  CHECK_THROWS_AS(run_dedup(fine, schema, Method::direct, 1.5), ConfigError);
  CHECK(run_dedup(std::vector<Record>{}, schema, Method::direct, 0.8).clustering.item_count() == 0);
}

TEST_CASE("audit entries recompute exactly") {
  CorpusSpec spec;
  spec.entity_count = 40;
  spec.min_records = 2;
  spec.max_records = 4;
  spec.corruption.truncate = 0.3;
  spec.corruption.typo = 0.2;
  spec.corruption.blank = 0.1;
  spec.seed = 5;
  const auto corpus = generate_corpus(spec);
  const auto records = corpus_records(corpus);
  for (auto mode : {ScMode::binary, ScMode::graded}) {
    auto schema = corpus.schema;
    schema.sc_mode = mode;
    for (auto method : {Method::cluster_similarity, Method::direct}) {
      const auto r = run_dedup(records, schema, method, 0.8);
      CHECK(r.audit.size() == records.size() - r.clustering.size());
      const RecordScorer scorer(records, schema, method);
      for (const auto& e : r.audit) {
        CHECK(e.a < e.b);
        CHECK(e.similarity >= 0.8);
        CHECK(e.similarity == scorer(e.a, e.b));
        double num = 0.0;
        double k = 0.0;
        for (const auto& f : e.pair.fields) {
          num += f.sc * f.importance;
          k += f.importance;
        }
        CHECK(e.pair.normalizer == k);
        CHECK(e.similarity == num / k);
      }
    }
  }
}

TEST_CASE("parallel scoring matches serial scoring") {
  CorpusSpec spec;
  spec.entity_count = 30;
  spec.max_records = 3;
  spec.corruption.typo = 0.3;
  const auto corpus = generate_corpus(spec);
  const auto records = corpus_records(corpus);
  for (auto method : {Method::cluster_similarity, Method::direct}) {
    const auto one = run_dedup(records, corpus.schema, method, 0.8, 1);
    const auto four = run_dedup(records, corpus.schema, method, 0.8, 4);
    CHECK(one.clustering == four.clustering);
    REQUIRE(one.audit.size() == four.audit.size());
    for (std::size_t i = 0; i < one.audit.size(); ++i) CHECK(one.audit[i].similarity == four.audit[i].similarity);
  }
}

TEST_CASE("corpus generator") {
  CorpusSpec spec;
  spec.entity_count = 25;
  spec.corruption.truncate = 0.5;
  spec.corruption.typo = 0.5;
  spec.corruption.garble = 0.1;

  SUBCASE("deterministic in the seed") {
    std::ostringstream a, b, c;
    write_table(a, generate_corpus(spec).table, ',');
    write_table(b, generate_corpus(spec).table, ',');
    spec.seed = 2;
    write_table(c, generate_corpus(spec).table, ',');
    CHECK(a.str() == b.str());
    CHECK(a.str() != c.str());
  }
  SUBCASE("gold matches entity_ref") {
    const auto corpus = generate_corpus(spec);
    REQUIRE(corpus.table.header.front() == "entity_ref");
    CHECK(corpus.gold.item_count() == corpus.table.rows.size());
    CHECK(corpus.gold.size() == spec.entity_count);
    for (const auto& cluster : corpus.gold.clusters()) {
      for (auto id : cluster) CHECK(corpus.table.rows[id][0] == corpus.table.rows[cluster.front()][0]);
    }
  }
  SUBCASE("one record per entity gives singletons") {
    spec.min_records = spec.max_records = 1;
    const auto corpus = generate_corpus(spec);
    CHECK(corpus.gold == Clustering::singletons(spec.entity_count));
    const auto result = run_dedup(corpus_records(corpus), corpus.schema, Method::cluster_similarity, 0.8);
    CHECK(result.clustering == corpus.gold);
  }
  SUBCASE("no corruption round trips to gold") {
    spec.corruption = {};
    spec.min_records = 1;
    spec.max_records = 4;
    const auto corpus = generate_corpus(spec);
    const auto records = corpus_records(corpus);
    for (auto method : {Method::cluster_similarity, Method::direct}) {
      const auto result = run_dedup(records, corpus.schema, method, 0.9);
      CHECK(cluster_text(result.clustering) == cluster_text(corpus.gold));
      CHECK(evaluate(result.clustering, corpus.gold).f1 == 1.0);
    }
  }
  SUBCASE("cross-entity tokens stay apart") {
    spec.corruption = {};
    const auto corpus = generate_corpus(spec);
    for (std::size_t col = 1; col < corpus.table.header.size(); ++col) {
      for (std::size_t a = 0; a < corpus.table.rows.size(); ++a) {
        for (std::size_t b = a + 1; b < corpus.table.rows.size(); ++b) {
          if (corpus.table.rows[a][0] == corpus.table.rows[b][0]) continue;
          CHECK(jaro(corpus.table.rows[a][col], corpus.table.rows[b][col]) <= kMaxCrossEntityJaro);
        }
      }
    }
  }
  SUBCASE("spec validation") {
    spec.min_records = 3;
    spec.max_records = 2;
    CHECK_THROWS_AS(generate_corpus(spec), ConfigError);
    spec.max_records = 3;
    spec.corruption.typo = 1.5;
    CHECK_THROWS_AS(generate_corpus(spec), ConfigError);
    spec.corruption.typo = 0.5;
    CHECK_THROWS_AS(parse_columns("a:x"), ConfigError);
    spec.columns = parse_columns("a:0");
    CHECK_THROWS_AS(generate_corpus(spec), ConfigError);
    spec.columns = parse_columns("a:1,a:2");
    CHECK_THROWS_AS(generate_corpus(spec), ConfigError);
    spec.columns = parse_columns("a:1,b:2");
    CHECK(generate_corpus(spec).table.header == std::vector<std::string>{"entity_ref", "a", "b"});
  }
}
