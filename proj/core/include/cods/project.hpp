#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cods/search.hpp"
#include "cods/transform.hpp"

namespace cods {

/// Error categories map one-to-one onto process exit codes.
enum class ErrorKind { usage = 1, parse = 2, pipeline = 3 };

class CodsError : public std::runtime_error {
 public:
  CodsError(ErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Flat key=value project configuration (`project.conf`).
struct ProjectConfig {
  std::string name;
  PsoParams pso;
  /// Absent means a fresh random seed on every transform.
  std::optional<std::uint64_t> seed;
  double theta = 0.5;
  std::optional<std::string> model_file;
  std::vector<std::string> training_files;
};

std::string write_config(const ProjectConfig& config);
/// Throws CodsError(usage) on unknown keys or malformed values.
ProjectConfig parse_config(std::string_view text);

struct TransformOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> swarm_size;
  std::optional<std::size_t> iterations;
  std::optional<double> theta;
};

struct TransformRun {
  std::uint64_t seed = 0;
  SearchOutcome search;
  TransformResult result;
};

class Project {
 public:
  static constexpr std::string_view kConfigFile = "project.conf";
  static constexpr std::string_view kInputDir = "Input";
  static constexpr std::string_view kPredicatesDir = "Output/Code Predicates";
  static constexpr std::string_view kJavaDir = "Output/Java Code";
  static constexpr std::string_view kPredicatesFile = "Predicates";
  static constexpr std::string_view kReadmeFile = "readme";

  /// Creates `<parent>/<name>` with the directory skeleton and a default
  /// configuration. Fails if the path already exists.
  static Project create(const std::string& name, const std::filesystem::path& parent);
  static Project open(const std::filesystem::path& root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path input_dir() const { return root_ / kInputDir; }
  std::filesystem::path predicates_dir() const { return root_ / kPredicatesDir; }
  std::filesystem::path java_dir() const { return root_ / kJavaDir; }
  const ProjectConfig& config() const { return config_; }

  /// Validates every file, then copies them into Input/. Returns the total
  /// block count across all training files of the project.
  std::size_t import_training(std::span<const std::filesystem::path> files, std::ostream& log);

  /// Exactly one file; replaces any previously imported model. Returns the
  /// construct count.
  std::size_t import_models(std::span<const std::filesystem::path> files, std::ostream& log);

  /// Knowledge base build, search and transformation. Writes the
  /// `Predicates` file and the step-3 readme and echoes the report.
  TransformRun run_transform(const TransformOverrides& overrides, std::ostream& console);

  /// Renders the `Predicates` file into Java sources and the step-4 readme.
  /// Returns the generated file names.
  std::vector<std::string> run_generate(std::ostream& console);

 private:
  explicit Project(std::filesystem::path root, ProjectConfig config)
      : root_(std::move(root)), config_(std::move(config)) {}
  void save_config() const;
  std::vector<MappingBlock> load_training(const std::vector<std::string>& names) const;

  std::filesystem::path root_;
  ProjectConfig config_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace cods
