// cods: generate Java code from predicate-encoded models using a knowledge
// base of past model-to-code transformation examples.
//
//   cods new <name> [--path P]
//   cods import-training <files...>
//   cods import-models <file>
//   cods transform [--seed N --swarm N --iters N --theta X]
//   cods generate
//
// The project directory comes from --project, then $CODS_PROJECT, then the
// current directory. Exit codes: 0 ok, 1 usage, 2 parse, 3 pipeline order.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cods/project.hpp"

namespace fs = std::filesystem;

namespace {

fs::path project_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("CODS_PROJECT"); env && *env) return env;
  return fs::current_path();
}

std::string one_line(std::string s) {
  for (auto& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cods - model-to-code generation from transformation examples"};
  app.require_subcommand(1);

  std::string project_flag;
  app.add_option("--project", project_flag, "Project directory (default: $CODS_PROJECT or .)");

  auto* cmd_new = app.add_subcommand("new", "Create a project skeleton");
  std::string new_name;
  std::string new_path = ".";
  cmd_new->add_option("name", new_name, "Project name")->required();
  cmd_new->add_option("--path", new_path, "Parent directory for the project");

  auto* cmd_training = app.add_subcommand("import-training", "Copy training files into Input/");
  std::vector<std::string> training_files;
  cmd_training->add_option("files", training_files, "Training files with mapping blocks");

  auto* cmd_models = app.add_subcommand("import-models", "Copy the input model file into Input/");
  std::vector<std::string> model_files;
  cmd_models->add_option("file", model_files, "Model file (exactly one)");

  auto* cmd_transform = app.add_subcommand("transform", "Search and transform models into code predicates");
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> swarm;
  std::optional<std::size_t> iters;
  std::optional<double> theta;
  cmd_transform->add_option("--seed", seed, "Random seed");
  cmd_transform->add_option("--swarm", swarm, "Swarm size")->check(CLI::PositiveNumber);
  cmd_transform->add_option("--iters", iters, "Iterations")->check(CLI::PositiveNumber);
  cmd_transform->add_option("--theta", theta, "Nearest-match threshold in (0, 1]");

  auto* cmd_generate = app.add_subcommand("generate", "Render code predicates into Java files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "cods: error: " << one_line(e.what()) << '\n';
    return static_cast<int>(cods::ErrorKind::usage);
  }

  try {
    if (*cmd_new) {
      auto p = cods::Project::create(new_name, new_path);
      std::cout << "created project " << p.root().string() << '\n';
      return 0;
    }

    auto project = cods::Project::open(project_root(project_flag));
    if (*cmd_training) {
      std::vector<fs::path> files(training_files.begin(), training_files.end());
      std::size_t blocks = project.import_training(files, std::cerr);
      std::cout << "imported " << files.size() << " training file(s); knowledge base now holds " << blocks
                << " mapping blocks\n";
    } else if (*cmd_models) {
      std::vector<fs::path> files(model_files.begin(), model_files.end());
      std::size_t n = project.import_models(files, std::cerr);
      std::cout << "imported model with " << n << " constructs\n";
    } else if (*cmd_transform) {
      cods::TransformOverrides o{seed, swarm, iters, theta};
      project.run_transform(o, std::cout);
    } else if (*cmd_generate) {
      project.run_generate(std::cout);
    }
    return 0;
  } catch (const cods::CodsError& e) {
    std::cerr << "cods: error: " << one_line(e.what()) << '\n';
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "cods: error: " << one_line(e.what()) << '\n';
    return static_cast<int>(cods::ErrorKind::usage);
  }
}
