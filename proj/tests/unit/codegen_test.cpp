#include <gtest/gtest.h>

#include "cods/codegen.hpp"

using namespace cods;

namespace {

std::vector<Predicate> preds(std::initializer_list<std::string_view> texts) {
  std::vector<Predicate> out;
  for (auto t : texts) out.push_back(parse_predicate(t));
  return out;
}

}  // namespace

TEST(Render, ClassWithField) {
  auto r = render_files(preds({"java_class(Door)", "java_field(Door, locked, boolean)"}));
  ASSERT_EQ(r.files.size(), 1u);
  EXPECT_EQ(r.files[0].filename, "Door.java");
  EXPECT_EQ(r.files[0].content,
            "public class Door {\n"
            "    private boolean locked;\n"
            "}\n");
  EXPECT_TRUE(r.report.rows.empty());
  EXPECT_TRUE(check_java_structure(r.files[0]).empty());
}

TEST(Render, StateMachine) {
  auto r = render_files(preds({"java_class(Lift)", "java_state_enum(Lift, Idle)", "java_state_enum(Lift, Moving)",
                               "java_initial_state(Lift, Idle)", "java_transition(Lift, start, Idle, Moving)"}));
  ASSERT_EQ(r.files.size(), 1u);
  EXPECT_EQ(r.files[0].content,
            "public class Lift {\n"
            "    private enum State { Idle, Moving }\n"
            "\n"
            "    private State currentState = State.Idle;\n"
            "\n"
            "    public void handleEvent(String event) {\n"
            "        if (currentState == State.Idle) {\n"
            "            if (\"start\".equals(event)) {\n"
            "                currentState = State.Moving;\n"
            "            }\n"
            "        }\n"
            "    }\n"
            "}\n");
  EXPECT_TRUE(check_java_structure(r.files[0]).empty());
}

TEST(Render, MethodsParamsStatementsAndInheritance) {
  auto r = render_files(preds({"java_class(Door)", "java_class(Part)", "java_extends(Door, Part)",
                               "java_method(Door, open, void)", "java_param(Door, open, force, boolean)",
                               "java_stmt(Door, open, 2, \"locked = false;\")", "java_stmt(Door, open, 1, \"check();\")",
                               "java_param(Door, open, force, boolean)"}));
  ASSERT_EQ(r.files.size(), 2u);
  EXPECT_EQ(r.files[0].filename, "Door.java");
  EXPECT_EQ(r.files[0].content,
            "public class Door extends Part {\n"
            "    public void open(boolean force) {\n"
            "        check();\n"
            "        locked = false;\n"
            "    }\n"
            "}\n");
  EXPECT_EQ(r.files[1].content, "public class Part {\n}\n");
}

TEST(Render, EmptyInput) {
  auto r = render_files({});
  EXPECT_TRUE(r.files.empty());
  EXPECT_TRUE(r.report.rows.empty());
  EXPECT_EQ(write_codegen_report(r.report), "file | reason | construct or predicate\n");
}

TEST(Render, UnknownPredicateGoesToUnmappedFile) {
  auto r = render_files(preds({"cpp_class(X)"}));
  ASSERT_EQ(r.files.size(), 1u);
  EXPECT_EQ(r.files[0].filename, kUnmappedFile);
  EXPECT_EQ(r.unknown_count, 1u);
  EXPECT_EQ(write_codegen_report(r.report),
            "file | reason | construct or predicate\n"
            "_Unmapped.java | unknown-predicate | cpp_class(X).\n");
}

TEST(Render, UnknownPredicateForKnownClassStaysInClassFile) {
  auto r = render_files(preds({"java_class(Door)", "java_annotation(Door, \"@Deprecated\")"}));
  ASSERT_EQ(r.files.size(), 1u);
  EXPECT_NE(r.files[0].content.find("    // UNMAPPED: java_annotation(Door, \"@Deprecated\").\n"), std::string::npos);
  EXPECT_TRUE(check_java_structure(r.files[0]).empty());
}

TEST(Render, TodoMethodIsReported) {
  auto r = render_files(preds({"java_class(Door)", "java_method(Door, open, TODO)"}));
  std::string report = write_codegen_report(r.report);
  EXPECT_EQ(report,
            "file | reason | construct or predicate\n"
            "Door.java | partial | java_method(Door, open, TODO).\n");
}

TEST(Render, UndeclaredClassIsSynthesized) {
  auto r = render_files(preds({"java_field(Door, locked, boolean)"}));
  ASSERT_EQ(r.files.size(), 1u);
  ASSERT_EQ(r.report.rows.size(), 1u);
  EXPECT_EQ(r.report.rows[0].reason, ReportReason::synthesized);
  EXPECT_EQ(r.report.rows[0].file, "Door.java");
}

TEST(Render, FlaggedConstructsBecomeRows) {
  auto code = preds({"java_class(Door)", "java_method(Door, open, TODO)"});
  std::vector<FlaggedConstruct> flagged{
      {OutcomeStatus::nearest, parse_predicate("operation(Door, open)"), 2.0 / 3.0, {1}},
      {OutcomeStatus::unmatched, parse_predicate("signal(Door, jam)"), 0.0, {}},
      {OutcomeStatus::unmatched, parse_predicate("signal(Nowhere, jam)"), 0.0, {}},
  };
  auto r = render_files(code, flagged);
  EXPECT_EQ(write_codegen_report(r.report),
            "file | reason | construct or predicate\n"
            "- | no-match | signal(Nowhere, jam).\n"
            "Door.java | partial | operation(Door, open).\n"
            "Door.java | no-match | signal(Door, jam).\n");
}

TEST(Render, Conflicts) {
  EXPECT_THROW(render_files(preds({"java_class(A)", "java_initial_state(A, X)", "java_initial_state(A, Y)"})),
               CodegenError);
  EXPECT_THROW(render_files(preds({"java_class(A)", "java_extends(A, B)", "java_extends(A, C)"})), CodegenError);
}

TEST(Vocabulary, KnownPredicatesNeedExactArity) {
  EXPECT_TRUE(is_code_predicate(parse_predicate("java_class(A)")));
  EXPECT_FALSE(is_code_predicate(parse_predicate("java_class(A, B)")));
  EXPECT_TRUE(is_code_predicate(parse_predicate("java_transition(A, e, S, T)")));
  EXPECT_FALSE(is_code_predicate(parse_predicate("cpp_class(A)")));
}

TEST(StructureCheck, DetectsProblems) {
  EXPECT_FALSE(check_java_structure({"Door.java", "public class Door {\n"}).empty());
  EXPECT_FALSE(check_java_structure({"Door.java", "public class Lift {\n}\n"}).empty());
  EXPECT_FALSE(check_java_structure({"Door.java", "public class Door {\n    int $x;\n}\n"}).empty());
  EXPECT_FALSE(check_java_structure({"Door.java", "public class Door {\n}\npublic class Door {\n}\n"}).empty());
  EXPECT_FALSE(check_java_structure({"Door.java", "public class Door {\n    void f( {}\n}\n"}).empty());
  EXPECT_TRUE(check_java_structure({"Door.java", "public class Door {\n    String s = \"{(\";\n}\n"}).empty());
}
