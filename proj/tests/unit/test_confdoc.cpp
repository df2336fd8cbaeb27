#include <doctest.h>

#include "cea/confdoc.hpp"
#include "cea/error.hpp"

using namespace cea;

TEST_SUITE("confdoc") {

TEST_CASE("scalars, lists and nested blocks") {
  auto doc = confdoc::parse(R"(
    # comment
    name = "two words"
    n = -2.5
    flags = [a, b, [1, 2]]
    outer x {
      inner { k = 3; j = true }
    }
  )");
  CHECK(doc.get("name").str() == "two words");
  CHECK(doc.get("name").quoted());
  CHECK(doc.get("n").number() == -2.5);
  const auto& flags = doc.get("flags").items();
  REQUIRE(flags.size() == 3);
  CHECK(flags[2].numbers() == std::vector<double>{1, 2});
  const auto* outer = doc.child("outer");
  REQUIRE(outer);
  CHECK(outer->name == "x");
  CHECK(outer->child("inner")->get("k").integer() == 3);
  CHECK(outer->child("inner")->get("j").boolean());
}

TEST_CASE("parse errors carry line and column") {
  try {
    confdoc::parse("a = 1\nb = [1, 2\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("3:") != std::string::npos);
  }
  CHECK_THROWS_AS(confdoc::parse("block {"), Error);
  CHECK_THROWS_AS(confdoc::parse("= 3"), Error);
}

TEST_CASE("type mismatches are schema errors") {
  auto doc = confdoc::parse("a = word\nb = [1]");
  try {
    (void)doc.get("a").number();
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaError);
  }
  CHECK_THROWS_AS(doc.get("b").str(), Error);
  CHECK_THROWS_AS(doc.get("missing"), Error);
}

TEST_CASE("writer output parses back to the same document") {
  confdoc::Block root;
  root.set("x", confdoc::number_value(0.1));
  root.set("s", confdoc::text("say \"hi\""));
  root.set("l", confdoc::Value::list({confdoc::word("a"), confdoc::number_value(3)}));
  confdoc::Block child;
  child.type = "entry";
  child.name = "e1";
  child.set("y", confdoc::number_value(-1e-9));
  root.add_child(child);

  auto back = confdoc::parse(confdoc::write(root));
  CHECK(back.get("x").number() == 0.1);
  CHECK(back.get("s").str() == "say \"hi\"");
  CHECK(back.get("l").items().size() == 2);
  REQUIRE(back.child("entry"));
  CHECK(back.child("entry")->get("y").number() == -1e-9);
  CHECK(confdoc::write(back) == confdoc::write(root));
}

}
