#include "cods/synthetic_corpus.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <string_view>

namespace cods {

namespace {

// Hand-rolled draws on top of mt19937_64 so the corpus is identical across
// standard library implementations.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)); }
  bool chance(double p) { return unit() < p; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

Arg id(std::string_view s) { return Arg::identifier(std::string(s)); }
Arg ph(std::string_view s) { return Arg::placeholder(std::string(s)); }

Predicate pred(std::string name, std::vector<Arg> args) { return Predicate{std::move(name), std::move(args)}; }

// `prevalence` is the fraction of past examples that exercise the construct
// kind, i.e. the chance that a block carries the rule.
struct Family {
  std::string_view name;
  double prevalence;
  MappingEntry entry;
};

MappingEntry statement_rule(std::string_view asl) {
  return {pred(std::string(asl), {ph("C"), ph("M"), ph("N"), ph("Code")}),
          {pred("java_stmt", {ph("C"), ph("M"), ph("N"), ph("Code")})}};
}

std::vector<Family> families() {
  // Nearly every past example exercises the common construct kinds; typed
  // variants and kinds the target model never uses are occasional.
  const double kCommon = 0.98;
  const double kRare = 0.3;
  std::vector<Family> f;
  auto add = [&](std::string_view name, double prevalence, MappingEntry e) {
    f.push_back({name, prevalence, std::move(e)});
  };
  add("class", kCommon, {pred("class", {ph("C")}), {pred("java_class", {ph("C")})}});
  add("generalization", kCommon,
      {pred("generalization", {ph("Sub"), ph("Super")}), {pred("java_extends", {ph("Sub"), ph("Super")})}});
  add("attribute", kCommon,
      {pred("attribute", {ph("C"), ph("A"), ph("T")}), {pred("java_field", {ph("C"), ph("A"), ph("T")})}});
  for (std::string_view type : {"int", "boolean", "String", "float"}) {
    add("attribute_typed", kRare,
        {pred("attribute", {ph("C"), ph("A"), id(type)}), {pred("java_field", {ph("C"), ph("A"), id(type)})}});
  }
  add("operation", kCommon,
      {pred("operation", {ph("C"), ph("M"), ph("R")}), {pred("java_method", {ph("C"), ph("M"), ph("R")})}});
  add("parameter", kCommon,
      {pred("parameter", {ph("C"), ph("M"), ph("P"), ph("T")}),
       {pred("java_param", {ph("C"), ph("M"), ph("P"), ph("T")})}});
  add("association_one", kCommon,
      {pred("association", {ph("C"), ph("R"), ph("T"), id("one")}), {pred("java_field", {ph("C"), ph("R"), ph("T")})}});
  add("association_many", kCommon,
      {pred("association", {ph("C"), ph("R"), ph("T"), id("many")}),
       {pred("java_field", {ph("C"), ph("R"), Arg::string("java.util.List")})}});
  add("state", kCommon, {pred("state", {ph("C"), ph("S")}), {pred("java_state_enum", {ph("C"), ph("S")})}});
  add("initial_state", kCommon,
      {pred("initial_state", {ph("C"), ph("S")}), {pred("java_initial_state", {ph("C"), ph("S")})}});
  add("transition", kCommon,
      {pred("transition", {ph("C"), ph("E"), ph("F"), ph("T")}),
       {pred("java_transition", {ph("C"), ph("E"), ph("F"), ph("T")})}});
  add("final_state", kRare, {pred("final_state", {ph("C"), ph("S")}), {pred("java_state_enum", {ph("C"), ph("S")})}});
  add("asl_assign", kCommon, statement_rule("asl_assign"));
  add("asl_call", kCommon, statement_rule("asl_call"));
  add("asl_generate", kCommon, statement_rule("asl_generate"));
  add("asl_if", kCommon, statement_rule("asl_if"));
  add("asl_return", kCommon, statement_rule("asl_return"));
  add("asl_loop", kCommon, statement_rule("asl_loop"));
  add("asl_create", kCommon, statement_rule("asl_create"));
  add("asl_delete", kRare, statement_rule("asl_delete"));
  return f;
}

struct ClassSpec {
  std::string_view name;
  std::string_view super;  // empty for a root class
  std::array<std::pair<std::string_view, std::string_view>, 4> attributes;
  std::array<std::pair<std::string_view, std::string_view>, 3> operations;  // name, return type
};

const std::array<ClassSpec, 12> kClasses{{
    {"Elevator", "", {{{"currentFloor", "int"}, {"direction", "String"}, {"moving", "boolean"}, {"speed", "double"}}},
     {{{"moveTo", "void"}, {"stop", "void"}, {"load", "int"}}}},
    {"Door", "", {{{"closed", "boolean"}, {"obstructed", "boolean"}, {"cycles", "int"}, {"lastOpened", "long"}}},
     {{{"close", "void"}, {"reopen", "void"}, {"isClosed", "boolean"}}}},
    {"Floor", "", {{{"number", "int"}, {"label", "String"}, {"waiting", "int"}, {"height", "double"}}},
     {{{"call", "void"}, {"clearCall", "void"}, {"hasCall", "boolean"}}}},
    {"Button", "", {{{"pressed", "boolean"}, {"lit", "boolean"}, {"code", "String"}, {"presses", "int"}}},
     {{{"press", "void"}, {"reset", "void"}, {"isPressed", "boolean"}}}},
    {"Motor", "", {{{"rpm", "int"}, {"running", "boolean"}, {"torque", "double"}, {"model", "String"}}},
     {{{"start", "void"}, {"halt", "void"}, {"setSpeed", "void"}}}},
    {"Controller", "", {{{"mode", "String"}, {"pending", "int"}, {"online", "boolean"}, {"tick", "long"}}},
     {{{"dispatch", "void"}, {"schedule", "void"}, {"nextTarget", "int"}}}},
    {"Display", "", {{{"text", "String"}, {"brightness", "int"}, {"blinking", "boolean"}, {"arrow", "String"}}},
     {{{"show", "void"}, {"clear", "void"}, {"refresh", "void"}}}},
    {"Sensor", "", {{{"reading", "double"}, {"healthy", "boolean"}, {"sensorId", "String"}, {"samples", "int"}}},
     {{{"sample", "void"}, {"calibrate", "void"}, {"isHealthy", "boolean"}}}},
    {"FloorButton", "Button", {{{"floor", "int"}, {"up", "boolean"}, {"panel", "String"}, {"delay", "long"}}},
     {{{"request", "void"}, {"cancel", "void"}, {"target", "int"}}}},
    {"CarButton", "Button", {{{"destination", "int"}, {"emergency", "boolean"}, {"caption", "String"}, {"glow", "double"}}},
     {{{"select", "void"}, {"deselect", "void"}, {"chosen", "int"}}}},
    {"WeightSensor", "Sensor", {{{"kilograms", "double"}, {"limit", "int"}, {"overloaded", "boolean"}, {"unit", "String"}}},
     {{{"weigh", "void"}, {"tare", "void"}, {"isOverloaded", "boolean"}}}},
    {"PositionSensor", "Sensor", {{{"offset", "double"}, {"aligned", "boolean"}, {"zone", "int"}, {"track", "String"}}},
     {{{"locate", "void"}, {"align", "void"}, {"position", "int"}}}},
}};

const std::array<std::string_view, 12> kStates{"Idle", "DoorsOpening", "DoorsOpen", "DoorsClosing",
                                               "Accelerating", "MovingUp", "MovingDown", "Decelerating",
                                               "Stopped", "Overloaded", "Emergency", "OutOfService"};

struct TransitionSpec {
  std::string_view event, from, to;
};

const std::array<TransitionSpec, 27> kTransitions{{
    {"call", "Idle", "DoorsClosing"},          {"arrive", "Idle", "DoorsOpening"},
    {"opened", "DoorsOpening", "DoorsOpen"},   {"obstruct", "DoorsOpening", "DoorsOpen"},
    {"timeout", "DoorsOpen", "DoorsClosing"},  {"overload", "DoorsOpen", "Overloaded"},
    {"closed", "DoorsClosing", "Accelerating"}, {"obstruct", "DoorsClosing", "DoorsOpening"},
    {"idle", "DoorsClosing", "Idle"},          {"goUp", "Accelerating", "MovingUp"},
    {"goDown", "Accelerating", "MovingDown"},  {"approach", "MovingUp", "Decelerating"},
    {"approach", "MovingDown", "Decelerating"}, {"halt", "Decelerating", "Stopped"},
    {"open", "Stopped", "DoorsOpening"},       {"unload", "Overloaded", "DoorsOpen"},
    {"alarm", "MovingUp", "Emergency"},        {"alarm", "MovingDown", "Emergency"},
    {"alarm", "Accelerating", "Emergency"},    {"alarm", "Decelerating", "Emergency"},
    {"alarm", "Idle", "Emergency"},            {"reset", "Emergency", "Idle"},
    {"fault", "Emergency", "OutOfService"},    {"repair", "OutOfService", "Idle"},
    {"disable", "Idle", "OutOfService"},       {"resume", "Stopped", "Idle"},
    {"alarm", "Stopped", "Emergency"},
}};

struct AssociationSpec {
  std::string_view owner, role, target, multiplicity;
};

const std::array<AssociationSpec, 10> kAssociations{{
    {"Controller", "elevator", "Elevator", "one"},   {"Controller", "floors", "Floor", "many"},
    {"Elevator", "door", "Door", "one"},             {"Elevator", "motor", "Motor", "one"},
    {"Elevator", "buttons", "CarButton", "many"},    {"Floor", "buttons", "FloorButton", "many"},
    {"Elevator", "display", "Display", "one"},       {"Elevator", "scale", "WeightSensor", "one"},
    {"Elevator", "locator", "PositionSensor", "one"}, {"Controller", "displays", "Display", "many"},
}};

constexpr std::array<std::string_view, 9> kSystems{"atm",        "library",    "vending_machine",
                                                   "traffic_light", "microwave", "parking_garage",
                                                   "thermostat", "cruise_control", "online_shop"};

constexpr std::size_t kBlockCount = 62;
constexpr std::size_t kAslStatements = 182;

std::string statement_code(std::string_view kind, const ClassSpec& c, std::size_t salt) {
  const auto& attr = c.attributes[salt % 4];
  const auto& flag = *std::find_if(c.attributes.begin(), c.attributes.end(),
                                   [](const auto& a) { return a.second == "boolean"; });
  const auto& counter = *std::find_if(c.attributes.begin(), c.attributes.end(),
                                      [](const auto& a) { return a.second == "int"; });
  std::string a(attr.first);
  if (kind == "asl_assign") {
    if (attr.second == "boolean") return a + " = " + (salt % 2 ? "true" : "false") + ";";
    if (attr.second == "String") return a + " = \"" + std::string(c.name) + "-" + std::to_string(salt) + "\";";
    return a + " = " + a + " + 1;";
  }
  if (kind == "asl_generate") return "handleEvent(\"" + std::string(kTransitions[salt % kTransitions.size()].event) + "\");";
  if (kind == "asl_call") return std::string(c.operations[salt % 2].first) + "();";
  if (kind == "asl_if") return "if (" + std::string(flag.first) + ") { " + std::string(counter.first) + " = 0; }";
  if (kind == "asl_loop") {
    return "for (int i = 0; i < " + std::string(counter.first) + "; i++) { " + std::string(c.operations[1].first) + "(); }";
  }
  if (kind == "asl_create") return "Object item" + std::to_string(salt) + " = new Object();";
  return "return " + std::string(counter.first) + ";";
}

}  // namespace

SyntheticCorpus make_ecs_corpus(std::uint64_t seed) {
  Draw draw(seed);
  SyntheticCorpus corpus;
  const std::vector<Family> fams = families();

  // --- model ---------------------------------------------------------------
  std::vector<std::pair<Predicate, std::vector<Predicate>>> rows;  // construct, reference
  auto exact_row = [&](Predicate p, std::vector<Predicate> ref) { rows.emplace_back(std::move(p), std::move(ref)); };
  auto hole = [&](std::vector<std::size_t>& bucket, Predicate p, std::vector<Predicate> ref) {
    bucket.push_back(rows.size());
    rows.emplace_back(std::move(p), std::move(ref));
  };

  for (const auto& c : kClasses) exact_row(pred("class", {id(c.name)}), {pred("java_class", {id(c.name)})});
  for (const auto& c : kClasses) {
    if (c.super.empty()) continue;
    exact_row(pred("generalization", {id(c.name), id(c.super)}), {pred("java_extends", {id(c.name), id(c.super)})});
  }

  // Statement counts per operation: 36 operations share 182 statements.
  std::vector<std::size_t> per_op(kClasses.size() * 3, kAslStatements / (kClasses.size() * 3));
  for (std::size_t i = 0; i < kAslStatements % per_op.size(); ++i) ++per_op[draw.below(per_op.size())];
  const std::array<std::string_view, 6> void_kinds{"asl_assign", "asl_generate", "asl_call",
                                                   "asl_if", "asl_loop", "asl_create"};

  std::size_t op_ordinal = 0;
  std::size_t params_left = 24;
  for (const auto& c : kClasses) {
    for (const auto& [name, type] : c.attributes) {
      exact_row(pred("attribute", {id(c.name), id(name), id(type)}),
                {pred("java_field", {id(c.name), id(name), id(type)})});
    }
    if (c.name == "Elevator") {
      hole(corpus.nearest_correct, pred("attribute", {id("Elevator"), id("maxLoad"), id("int"), Arg::integer(800)}),
           {pred("java_field", {id("Elevator"), id("maxLoad"), id("int")})});
      hole(corpus.unmatched, pred("timer", {id("Elevator"), id("doorTimer"), Arg::integer(3000)}),
           {pred("java_field", {id("Elevator"), id("doorTimer"), id("Timer")})});
    }
    if (c.name == "Door") {
      hole(corpus.nearest_correct, pred("attribute", {id("Door"), id("openDelay"), id("long"), Arg::integer(3)}),
           {pred("java_field", {id("Door"), id("openDelay"), id("long")})});
    }
    if (c.name == "Sensor") {
      hole(corpus.unmatched, pred("signal", {id("Sensor"), id("obstruction")}),
           {pred("java_method", {id("Sensor"), id("obstruction"), id("void")})});
    }

    for (std::size_t k = 0; k < c.operations.size(); ++k, ++op_ordinal) {
      const auto& [op, ret] = c.operations[k];
      exact_row(pred("operation", {id(c.name), id(op), id(ret)}), {pred("java_method", {id(c.name), id(op), id(ret)})});
      if (params_left > 0 && k < 2) {
        --params_left;
        const auto& arg = c.attributes[(k + op_ordinal) % 4];
        std::string pname = "new" + std::string(1, static_cast<char>(std::toupper(arg.first[0]))) +
                            std::string(arg.first.substr(1));
        exact_row(pred("parameter", {id(c.name), id(op), id(pname), id(arg.second)}),
                  {pred("java_param", {id(c.name), id(op), id(pname), id(arg.second)})});
      }
      if (c.name == "Controller" && op == "dispatch") {
        hole(corpus.nearest_correct,
             pred("parameter", {id("Controller"), id("dispatch"), id("target"), id("Floor"), id("in")}),
             {pred("java_param", {id("Controller"), id("dispatch"), id("target"), id("Floor")})});
      }
      for (std::size_t s = 1; s <= per_op[op_ordinal]; ++s) {
        std::string_view kind = (ret != "void" && s == per_op[op_ordinal]) ? "asl_return"
                                                                            : void_kinds[draw.below(void_kinds.size())];
        std::string code = statement_code(kind, c, draw.below(1000));
        auto seq = Arg::integer(static_cast<std::int64_t>(s));
        exact_row(pred(std::string(kind), {id(c.name), id(op), seq, Arg::string(code)}),
                  {pred("java_stmt", {id(c.name), id(op), seq, Arg::string(code)})});
      }
    }
    if (c.name == "Door") {
      hole(corpus.nearest_incorrect, pred("operation", {id("Door"), id("open")}),
           {pred("java_method", {id("Door"), id("open"), id("void")})});
    }
  }

  for (const auto& a : kAssociations) {
    Arg type = a.multiplicity == "one" ? id(a.target) : Arg::string("java.util.List");
    exact_row(pred("association", {id(a.owner), id(a.role), id(a.target), id(a.multiplicity)}),
              {pred("java_field", {id(a.owner), id(a.role), type})});
  }

  for (auto s : kStates) exact_row(pred("state", {id("Elevator"), id(s)}), {pred("java_state_enum", {id("Elevator"), id(s)})});
  hole(corpus.nearest_correct, pred("state", {id("Elevator"), id("Maintenance"), id("final")}),
       {pred("java_state_enum", {id("Elevator"), id("Maintenance")})});
  exact_row(pred("initial_state", {id("Elevator"), id("Idle")}), {pred("java_initial_state", {id("Elevator"), id("Idle")})});
  hole(corpus.unmatched,
       pred("initial_state", {id("Elevator"), id("Idle"), id("reset"), id("doorsClosed"), id("groundFloor")}),
       {pred("java_initial_state", {id("Elevator"), id("Idle")})});
  for (const auto& t : kTransitions) {
    exact_row(pred("transition", {id("Elevator"), id(t.event), id(t.from), id(t.to)}),
              {pred("java_transition", {id("Elevator"), id(t.event), id(t.from), id(t.to)})});
  }

  for (auto& [p, ref] : rows) {
    corpus.model.push_back(ModelConstruct{corpus.model.size(), p});
    corpus.reference.push_back(std::move(ref));
  }
  corpus.model_text = "% Elevator control system: class model, state model and ASL actions\n" +
                      serialize_model(corpus.model);

  // --- training blocks ------------------------------------------------------
  // Each block is one past example; it carries a rule when the example
  // exercised that construct kind.
  std::vector<std::vector<std::size_t>> members(kBlockCount);
  for (std::size_t b = 0; b < kBlockCount; ++b) {
    for (std::size_t f = 0; f < fams.size(); ++f) {
      if (draw.chance(fams[f].prevalence)) members[b].push_back(f);
    }
  }
  for (std::size_t f = 0; f < fams.size(); ++f) {
    bool covered = std::any_of(members.begin(), members.end(), [&](const auto& m) {
      return std::find(m.begin(), m.end(), f) != m.end();
    });
    if (!covered) members[draw.below(kBlockCount)].push_back(f);
  }

  BlockId next_id = 1;
  std::size_t block_cursor = 0;
  for (std::size_t s = 0; s < kSystems.size(); ++s) {
    std::size_t count = kBlockCount / kSystems.size() + (s < kBlockCount % kSystems.size() ? 1 : 0);
    std::vector<MappingBlock> file_blocks;
    for (std::size_t k = 0; k < count; ++k, ++block_cursor) {
      auto& m = members[block_cursor];
      draw.shuffle(m);
      MappingBlock block{next_id++, {}};
      for (std::size_t f : m) block.entries.push_back(fams[f].entry);
      file_blocks.push_back(block);
      corpus.blocks.push_back(std::move(block));
    }
    std::string text = "% training examples transcribed from the " + std::string(kSystems[s]) + " system\n" +
                       serialize_mapping_blocks(file_blocks);
    corpus.training_files.emplace_back(std::string(kSystems[s]) + ".txt", std::move(text));
  }
  return corpus;
}

}  // namespace cods
