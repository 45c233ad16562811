#include "cods/project.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "cods/codegen.hpp"
#include "cods/knowledge_base.hpp"

namespace cods {

namespace fs = std::filesystem;

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw CodsError(ErrorKind::usage, "project.conf: invalid value for " + std::string(key) + ": '" +
                                          std::string(value) + "'");
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

CodsError parse_failure(const fs::path& file, const ParseError& e) {
  return CodsError(ErrorKind::parse, file.filename().string() + ": " + e.what());
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CodsError(ErrorKind::usage, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CodsError(ErrorKind::usage, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw CodsError(ErrorKind::usage, "cannot write " + path.string());
}

std::string write_config(const ProjectConfig& c) {
  std::ostringstream os;
  os << "# cods project configuration\n";
  os << "name=" << c.name << '\n';
  os << "swarm=" << c.pso.swarm_size << '\n';
  os << "iterations=" << c.pso.iterations << '\n';
  os << "inertia=" << format_double(c.pso.inertia) << '\n';
  os << "cognitive=" << format_double(c.pso.cognitive) << '\n';
  os << "social=" << format_double(c.pso.social) << '\n';
  if (c.pso.v_max) os << "vmax=" << format_double(*c.pso.v_max) << '\n';
  os << "theta=" << format_double(c.theta) << '\n';
  if (c.seed) os << "seed=" << *c.seed << '\n';
  if (c.model_file) os << "model=" << *c.model_file << '\n';
  for (const auto& t : c.training_files) os << "training=" << t << '\n';
  return os.str();
}

ProjectConfig parse_config(std::string_view text) {
  ProjectConfig c;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw CodsError(ErrorKind::usage, "project.conf: expected key=value, got '" + std::string(line) + "'");
    }
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key == "name") c.name = value;
    else if (key == "swarm") c.pso.swarm_size = parse_number<std::size_t>(key, value);
    else if (key == "iterations") c.pso.iterations = parse_number<std::size_t>(key, value);
    else if (key == "inertia") c.pso.inertia = parse_number<double>(key, value);
    else if (key == "cognitive") c.pso.cognitive = parse_number<double>(key, value);
    else if (key == "social") c.pso.social = parse_number<double>(key, value);
    else if (key == "vmax") c.pso.v_max = parse_number<double>(key, value);
    else if (key == "theta") c.theta = parse_number<double>(key, value);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "model") c.model_file = std::string(value);
    else if (key == "training") c.training_files.emplace_back(value);
    else throw CodsError(ErrorKind::usage, "project.conf: unknown key '" + std::string(key) + "'");
  }
  return c;
}

Project Project::create(const std::string& name, const fs::path& parent) {
  if (name.empty() || name.find('/') != std::string::npos) {
    throw CodsError(ErrorKind::usage, "invalid project name '" + name + "'");
  }
  fs::path root = parent / name;
  if (fs::exists(root)) throw CodsError(ErrorKind::usage, "project exists: " + root.string());
  std::error_code ec;
  for (auto dir : {kInputDir, kPredicatesDir, kJavaDir}) {
    fs::create_directories(root / dir, ec);
    if (ec) throw CodsError(ErrorKind::usage, "cannot create " + (root / dir).string() + ": " + ec.message());
  }
  ProjectConfig config;
  config.name = name;
  Project p(root, std::move(config));
  p.save_config();
  return p;
}

Project Project::open(const fs::path& root) {
  fs::path conf = root / kConfigFile;
  if (!fs::exists(conf)) {
    throw CodsError(ErrorKind::usage, "not a cods project: " + root.string() + " (no " + std::string(kConfigFile) + ")");
  }
  return Project(root, parse_config(read_file(conf)));
}

void Project::save_config() const { write_file(root_ / kConfigFile, write_config(config_)); }

std::vector<MappingBlock> Project::load_training(const std::vector<std::string>& names) const {
  std::vector<MappingBlock> all;
  for (const auto& name : names) {
    fs::path file = input_dir() / name;
    try {
      auto blocks = parse_mapping_blocks(read_file(file));
      std::move(blocks.begin(), blocks.end(), std::back_inserter(all));
    } catch (const ParseError& e) {
      throw parse_failure(file, e);
    }
  }
  return all;
}

std::size_t Project::import_training(std::span<const fs::path> files, std::ostream& log) {
  if (files.empty()) throw CodsError(ErrorKind::usage, "no training data: give one or more training files");

  // Block id -> file that declares it, seeded with what is already imported.
  std::map<BlockId, std::string> owner;
  std::set<std::string> incoming;
  for (const auto& f : files) incoming.insert(f.filename().string());
  std::vector<std::string> kept;
  for (const auto& name : config_.training_files) {
    if (incoming.count(name)) continue;
    kept.push_back(name);
    for (const auto& b : load_training({name})) owner.emplace(b.id, name);
  }

  for (const auto& f : files) {
    std::string name = f.filename().string();
    if (config_.model_file && *config_.model_file == name) {
      throw CodsError(ErrorKind::usage, name + " is already imported as the input model");
    }
    std::vector<Lint> lints;
    std::vector<MappingBlock> blocks;
    try {
      blocks = parse_mapping_blocks(read_file(f), &lints);
    } catch (const ParseError& e) {
      throw parse_failure(f, e);
    }
    for (const auto& l : lints) log << "warning: " << name << ": line " << l.line << ": " << l.message << '\n';
    for (const auto& b : blocks) {
      auto [it, inserted] = owner.emplace(b.id, name);
      if (!inserted) {
        throw CodsError(ErrorKind::parse, "duplicate block id " + std::to_string(b.id) + " in " + name +
                                              " (already declared in " + it->second + ")");
      }
    }
  }

  for (const auto& f : files) {
    std::error_code ec;
    fs::copy_file(f, input_dir() / f.filename(), fs::copy_options::overwrite_existing, ec);
    if (ec) throw CodsError(ErrorKind::usage, "cannot copy " + f.string() + ": " + ec.message());
    kept.push_back(f.filename().string());
  }
  config_.training_files = std::move(kept);
  save_config();
  return owner.size();
}

std::size_t Project::import_models(std::span<const fs::path> files, std::ostream& log) {
  if (files.size() != 1) {
    throw CodsError(ErrorKind::usage, "import-models takes exactly one model file, got " + std::to_string(files.size()));
  }
  const fs::path& f = files.front();
  std::string name = f.filename().string();
  if (std::find(config_.training_files.begin(), config_.training_files.end(), name) != config_.training_files.end()) {
    throw CodsError(ErrorKind::usage, name + " is already imported as training data");
  }
  std::vector<Lint> lints;
  std::vector<ModelConstruct> constructs;
  try {
    constructs = parse_predicates(read_file(f), &lints);
  } catch (const ParseError& e) {
    throw parse_failure(f, e);
  }
  for (const auto& l : lints) log << "warning: " << name << ": line " << l.line << ": " << l.message << '\n';
  if (constructs.empty()) log << "warning: " << name << " contains no model constructs\n";

  if (config_.model_file) {
    log << "warning: replacing previously imported model " << *config_.model_file << '\n';
    if (*config_.model_file != name) fs::remove(input_dir() / *config_.model_file);
  }
  std::error_code ec;
  fs::copy_file(f, input_dir() / name, fs::copy_options::overwrite_existing, ec);
  if (ec) throw CodsError(ErrorKind::usage, "cannot copy " + f.string() + ": " + ec.message());
  config_.model_file = name;
  save_config();
  return constructs.size();
}

TransformRun Project::run_transform(const TransformOverrides& overrides, std::ostream& console) {
  if (!config_.model_file) throw CodsError(ErrorKind::pipeline, "no input models: run import-models first");
  if (config_.training_files.empty()) throw CodsError(ErrorKind::pipeline, "no training data: run import-training first");

  std::vector<MappingBlock> blocks = load_training(config_.training_files);
  std::optional<KnowledgeBase> kb;
  try {
    kb.emplace(std::move(blocks));
  } catch (const std::invalid_argument& e) {
    throw CodsError(ErrorKind::pipeline, e.what());
  }

  fs::path model_path = input_dir() / *config_.model_file;
  std::vector<Lint> lints;
  std::vector<ModelConstruct> constructs;
  try {
    constructs = parse_predicates(read_file(model_path), &lints);
  } catch (const ParseError& e) {
    throw parse_failure(model_path, e);
  }
  for (const auto& l : lints) console << "warning: line " << l.line << ": " << l.message << '\n';
  if (constructs.empty()) throw CodsError(ErrorKind::pipeline, "input model " + *config_.model_file + " is empty");

  PsoParams params = config_.pso;
  if (overrides.swarm_size) params.swarm_size = *overrides.swarm_size;
  if (overrides.iterations) params.iterations = *overrides.iterations;
  if (params.swarm_size < 1 || params.iterations < 1) {
    throw CodsError(ErrorKind::usage, "swarm size and iteration count must be at least 1");
  }
  const double theta = overrides.theta.value_or(config_.theta);
  if (!(theta > 0.0 && theta <= 1.0)) throw CodsError(ErrorKind::usage, "theta must lie in (0, 1]");

  TransformRun run;
  if (overrides.seed) run.seed = *overrides.seed;
  else if (config_.seed) run.seed = *config_.seed;
  else run.seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
  params.seed = run.seed;

  run.search = pso_search(constructs, *kb, params);
  run.result = transform_all(constructs, run.search, *kb, theta);

  std::string report = write_transform_report(run.result.report);
  fs::create_directories(predicates_dir());
  write_file(predicates_dir() / kPredicatesFile, write_predicates_file(run.result.outcomes));
  write_file(predicates_dir() / kReadmeFile, report);

  console << "seed: " << run.seed << '\n' << report;
  return run;
}

std::vector<std::string> Project::run_generate(std::ostream& console) {
  fs::path predicates = predicates_dir() / kPredicatesFile;
  if (!fs::exists(predicates)) throw CodsError(ErrorKind::pipeline, "no code predicates: run transform first");

  PredicatesFile parsed;
  try {
    parsed = read_predicates_file(read_file(predicates));
  } catch (const ParseError& e) {
    throw parse_failure(predicates, e);
  }
  RenderResult rendered;
  try {
    rendered = render_files(parsed.predicates, parsed.flagged);
  } catch (const CodegenError& e) {
    throw CodsError(ErrorKind::parse, e.what());
  }

  fs::create_directories(java_dir());
  for (const auto& entry : fs::directory_iterator(java_dir())) {
    if (entry.path().extension() == ".java" || entry.path().filename() == kReadmeFile) fs::remove(entry.path());
  }
  std::vector<std::string> names;
  for (const auto& f : rendered.files) {
    write_file(java_dir() / f.filename, f.content);
    names.push_back(f.filename);
  }
  std::string report = write_codegen_report(rendered.report);
  write_file(java_dir() / kReadmeFile, report);

  for (const auto& n : names) console << "generated " << n << '\n';
  console << report;
  return names;
}

}  // namespace cods
