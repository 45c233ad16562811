#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cods/project.hpp"
#include "cods/synthetic_corpus.hpp"

using namespace cods;
namespace fs = std::filesystem;

namespace {

class ProjectTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cods_project_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path put(const std::string& name, std::string_view text) {
    write_file(dir_ / name, text);
    return dir_ / name;
  }

  ErrorKind kind_of(const std::function<void()>& f) {
    try {
      f();
    } catch (const CodsError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::usage;
  }

  fs::path dir_;
  std::ostringstream log_;
};

constexpr std::string_view kToyTraining =
    "block 1\nmap: class($C) => java_class($C).\nendblock\n"
    "block 2\nmap: attribute($C, $A, $T) => java_field($C, $A, $T).\nendblock\n";
constexpr std::string_view kToyModel = "class(Door).\nattribute(Door, locked, boolean).\n";

}  // namespace

TEST_F(ProjectTest, CreateSkeletonAndDefaults) {
  auto p = Project::create("ecs", dir_);
  EXPECT_TRUE(fs::is_directory(dir_ / "ecs/Input"));
  EXPECT_TRUE(fs::is_directory(dir_ / "ecs/Output/Code Predicates"));
  EXPECT_TRUE(fs::is_directory(dir_ / "ecs/Output/Java Code"));
  std::string conf = read_file(dir_ / "ecs/project.conf");
  EXPECT_NE(conf.find("swarm=30\n"), std::string::npos);
  EXPECT_NE(conf.find("iterations=200\n"), std::string::npos);
  EXPECT_NE(conf.find("theta=0.5\n"), std::string::npos);
  EXPECT_EQ(conf.find("seed="), std::string::npos);
  EXPECT_FALSE(p.config().seed);
}

TEST_F(ProjectTest, CreateTwiceFails) {
  Project::create("ecs", dir_);
  try {
    Project::create("ecs", dir_);
    FAIL();
  } catch (const CodsError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::usage);
    EXPECT_NE(std::string(e.what()).find("project exists"), std::string::npos);
  }
}

TEST_F(ProjectTest, OpenNonProjectFails) {
  EXPECT_EQ(kind_of([&] { Project::open(dir_); }), ErrorKind::usage);
}

TEST_F(ProjectTest, ConfigRoundTrip) {
  ProjectConfig c;
  c.name = "x";
  c.pso.swarm_size = 7;
  c.pso.inertia = 0.1 + 0.2;
  c.pso.v_max = 2.5;
  c.seed = 18446744073709551615ull;
  c.theta = 0.75;
  c.model_file = "m.txt";
  c.training_files = {"a.txt", "b.txt"};
  auto back = parse_config(write_config(c));
  EXPECT_EQ(back.name, "x");
  EXPECT_EQ(back.pso.swarm_size, 7u);
  EXPECT_EQ(back.pso.inertia, c.pso.inertia);
  EXPECT_EQ(back.pso.v_max, 2.5);
  EXPECT_EQ(back.seed, c.seed);
  EXPECT_EQ(back.theta, 0.75);
  EXPECT_EQ(back.model_file, "m.txt");
  EXPECT_EQ(back.training_files, c.training_files);
  EXPECT_EQ(kind_of([] { parse_config("colour=red\n"); }), ErrorKind::usage);
  EXPECT_EQ(kind_of([] { parse_config("swarm=many\n"); }), ErrorKind::usage);
}

TEST_F(ProjectTest, ImportTrainingCountsAndRejects) {
  auto p = Project::create("t", dir_);
  std::vector<fs::path> none;
  EXPECT_EQ(kind_of([&] { p.import_training(none, log_); }), ErrorKind::usage);

  std::vector<fs::path> first{put("a.txt", kToyTraining)};
  EXPECT_EQ(p.import_training(first, log_), 2u);
  EXPECT_TRUE(fs::exists(p.input_dir() / "a.txt"));

  std::vector<fs::path> dup{put("b.txt", "block 2\nmap: class($C) => java_class($C).\nendblock\n")};
  EXPECT_EQ(kind_of([&] { p.import_training(dup, log_); }), ErrorKind::parse);
  EXPECT_FALSE(fs::exists(p.input_dir() / "b.txt"));

  std::vector<fs::path> broken{put("c.txt", "block 3\nmap: class($C) java_class($C).\nendblock\n")};
  try {
    p.import_training(broken, log_);
    FAIL();
  } catch (const CodsError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_NE(std::string(e.what()).find("c.txt"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("line 2, column"), std::string::npos);
  }

  // A file with an already imported name replaces the earlier copy.
  std::vector<fs::path> refresh{put("a.txt", "block 1\nmap: class($C) => java_class($C).\nendblock\n")};
  EXPECT_EQ(p.import_training(refresh, log_), 1u);
  put("a.txt", kToyTraining);
  EXPECT_EQ(p.import_training(first, log_), 2u);

  // Reopening sees the persisted state.
  auto again = Project::open(p.root());
  std::vector<fs::path> more{put("d.txt", "block 9\nmap: class($C) => java_class($C).\nendblock\n")};
  EXPECT_EQ(again.import_training(more, log_), 3u);
}

TEST_F(ProjectTest, ImportModels) {
  auto p = Project::create("m", dir_);
  std::vector<fs::path> two{put("a.txt", kToyModel), put("b.txt", kToyModel)};
  EXPECT_EQ(kind_of([&] { p.import_models(two, log_); }), ErrorKind::usage);

  std::vector<fs::path> empty{put("empty.txt", "% nothing\n")};
  EXPECT_EQ(p.import_models(empty, log_), 0u);
  EXPECT_NE(log_.str().find("warning"), std::string::npos);

  std::vector<fs::path> one{put("model.txt", kToyModel)};
  log_.str("");
  EXPECT_EQ(p.import_models(one, log_), 2u);
  EXPECT_NE(log_.str().find("replacing"), std::string::npos);
}

TEST_F(ProjectTest, PipelineOrderErrors) {
  auto p = Project::create("o", dir_);
  std::ostringstream out;
  try {
    p.run_transform({}, out);
    FAIL();
  } catch (const CodsError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::pipeline);
    EXPECT_NE(std::string(e.what()).find("no input models"), std::string::npos);
  }
  try {
    p.run_generate(out);
    FAIL();
  } catch (const CodsError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::pipeline);
    EXPECT_NE(std::string(e.what()).find("run transform first"), std::string::npos);
  }
  std::vector<fs::path> model{put("model.txt", kToyModel)};
  p.import_models(model, log_);
  EXPECT_EQ(kind_of([&] { p.run_transform({}, out); }), ErrorKind::pipeline);
}

TEST_F(ProjectTest, ToyPipeline) {
  auto p = Project::create("toy", dir_);
  std::vector<fs::path> training{put("train.txt", kToyTraining)};
  std::vector<fs::path> model{put("model.txt", kToyModel)};
  p.import_training(training, log_);
  p.import_models(model, log_);
  std::ostringstream out;
  auto run = p.run_transform({7, std::nullopt, std::nullopt, std::nullopt}, out);
  EXPECT_DOUBLE_EQ(run.search.best_fitness, 1.0);
  EXPECT_EQ(run.seed, 7u);
  EXPECT_EQ(read_file(p.predicates_dir() / "Predicates"), "java_class(Door).\njava_field(Door, locked, boolean).\n");
  EXPECT_NE(out.str().find("3. Best fitness: 1.0000\n"), std::string::npos);

  auto files = p.run_generate(out);
  EXPECT_EQ(files, std::vector<std::string>{"Door.java"});
  EXPECT_EQ(read_file(p.java_dir() / "Door.java"), "public class Door {\n    private boolean locked;\n}\n");
  EXPECT_EQ(read_file(p.java_dir() / "readme"), "file | reason | construct or predicate\n");
}

TEST_F(ProjectTest, GenerateRemovesStaleSources) {
  auto p = Project::create("stale", dir_);
  std::vector<fs::path> training{put("train.txt", kToyTraining)};
  std::vector<fs::path> model{put("model.txt", kToyModel)};
  p.import_training(training, log_);
  p.import_models(model, log_);
  std::ostringstream out;
  p.run_transform({1, std::nullopt, std::nullopt, std::nullopt}, out);
  write_file(p.java_dir() / "Old.java", "public class Old {\n}\n");
  p.run_generate(out);
  EXPECT_FALSE(fs::exists(p.java_dir() / "Old.java"));
}

TEST_F(ProjectTest, SeededTransformIsIdempotent) {
  auto p = Project::create("idem", dir_);
  auto corpus = make_ecs_corpus();
  std::vector<fs::path> training;
  for (const auto& [name, text] : corpus.training_files) training.push_back(put(name, text));
  std::vector<fs::path> model{put("ecs_model.txt", corpus.model_text)};
  EXPECT_EQ(p.import_training(training, log_), 62u);
  EXPECT_EQ(p.import_models(model, log_), 364u);
  std::ostringstream out;
  TransformOverrides o{42, std::nullopt, std::nullopt, std::nullopt};
  p.run_transform(o, out);
  std::string predicates = read_file(p.predicates_dir() / "Predicates");
  std::string readme = read_file(p.predicates_dir() / "readme");
  p.run_transform(o, out);
  EXPECT_EQ(read_file(p.predicates_dir() / "Predicates"), predicates);
  EXPECT_EQ(read_file(p.predicates_dir() / "readme"), readme);
  EXPECT_NE(readme.find("1. Input model constructs: 364\n2. Mapping blocks in training data: 62\n"
                        "3. Best fitness: 0.9780\n"),
            std::string::npos);
  EXPECT_NE(readme.find("5. Fitness evaluations: 6030\n"), std::string::npos);
}
