// Writes the synthetic elevator-control-system corpus to a directory:
// training/<system>.txt (9 files, 62 blocks) and ecs_model.txt (364 constructs).

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "cods/project.hpp"
#include "cods/synthetic_corpus.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cods-corpus - write the synthetic elevator-control training corpus and model"};
  std::string out_dir;
  std::uint64_t seed = cods::kDefaultCorpusSeed;
  app.add_option("dir", out_dir, "Output directory")->required();
  app.add_option("--seed", seed, "Corpus seed");
  CLI11_PARSE(app, argc, argv);

  namespace fs = std::filesystem;
  try {
    auto corpus = cods::make_ecs_corpus(seed);
    fs::create_directories(fs::path(out_dir) / "training");
    for (const auto& [name, text] : corpus.training_files) cods::write_file(fs::path(out_dir) / "training" / name, text);
    cods::write_file(fs::path(out_dir) / "ecs_model.txt", corpus.model_text);
    std::cout << "wrote " << corpus.training_files.size() << " training files (" << corpus.blocks.size()
              << " blocks) and a model with " << corpus.model.size() << " constructs to " << out_dir << '\n';
  } catch (const std::exception& e) {
    std::cerr << "cods-corpus: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
