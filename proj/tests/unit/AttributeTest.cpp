//===- AttributeTest.cpp - Attribute construction and equality ------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "sidekick/Attribute.h"
#include "sidekick/BuiltinDialects.h"

#include "doctest.h"

#include <cstdint>
#include <vector>

using namespace sidekick;

// Mask-based two's-complement wrap, formulated independently of the library.
static int64_t wrapOracle(int64_t value, unsigned width) {
  uint64_t mask = width == 64 ? ~uint64_t(0) : (uint64_t(1) << width) - 1;
  uint64_t bits = uint64_t(value) & mask;
  if (width < 64 && (bits >> (width - 1)) & 1)
    bits |= ~mask;
  return int64_t(bits);
}

TEST_CASE("integer attributes canonicalize into the two's-complement range") {
  auto valueOf = [](Attribute a) { return a.asInteger()->value; };

  CHECK(valueOf(makeIntegerAttr(42, 32)) == 42);
  CHECK(valueOf(makeIntegerAttr(int64_t(1) << 31, 32)) ==
        -(int64_t(1) << 31));
  CHECK(valueOf(makeIntegerAttr(0, 1)) == 0);
  CHECK(valueOf(makeIntegerAttr(1, 1)) == -1);
  CHECK(valueOf(makeIntegerAttr(255, 8)) == -1);
  CHECK(valueOf(makeIntegerAttr(128, 8)) == -128);
  CHECK(valueOf(makeIntegerAttr(-129, 8)) == 127);
  CHECK(valueOf(makeIntegerAttr(INT64_MIN, 64)) == INT64_MIN);
  CHECK(valueOf(makeIndexAttr(-7)) == -7);

  SUBCASE("adding 2^w leaves the attribute unchanged") {
    const unsigned widths[] = {1, 3, 8, 16, 32, 63};
    const int64_t samples[] = {0, 1, -1, 7, -120, 255, 4096, -65535, 1 << 30};
    for (unsigned w : widths) {
      for (int64_t v : samples) {
        int64_t shifted = int64_t(uint64_t(v) + (uint64_t(1) << w));
        CHECK(makeIntegerAttr(v, w) == makeIntegerAttr(shifted, w));
        CHECK(valueOf(makeIntegerAttr(v, w)) == wrapOracle(v, w));
      }
    }
  }
}

TEST_CASE("float attributes round to the type's width") {
  auto valueOf = [](Attribute a) { return a.asFloat()->value; };

  CHECK(valueOf(Attribute::floating(0.1, Attribute::floatType(64))) == 0.1);
  CHECK(valueOf(Attribute::floating(0.1, Attribute::floatType(32))) ==
        double(float(0.1)));
  CHECK(valueOf(Attribute::floating(-2.5, Attribute::floatType(32))) == -2.5);
  // Half-precision values against externally known bit patterns.
  CHECK(valueOf(Attribute::floating(0.1, Attribute::floatType(16))) ==
        0.0999755859375);
  CHECK(valueOf(Attribute::floating(2.718281828, Attribute::floatType(16))) ==
        2.71875);
  CHECK(valueOf(Attribute::floating(1.5, Attribute::floatType(16))) == 1.5);
  CHECK(valueOf(Attribute::floating(65504.0, Attribute::floatType(16))) ==
        65504.0);
}

TEST_CASE("dictionary attributes sort entries by key") {
  Attribute i32 = Attribute::integerType(32);
  Attribute dict = Attribute::dictionary(
      {{"zebra", i32}, {"alpha", Attribute::integerType(64)}, {"mid", i32}});
  const DictionaryAttrData *data = dict.asDictionary();
  REQUIRE(data != nullptr);
  REQUIRE(data->entries.size() == 3);
  CHECK(data->entries[0].first == "alpha");
  CHECK(data->entries[1].first == "mid");
  CHECK(data->entries[2].first == "zebra");
  CHECK(dict.dictionaryGet("mid") == i32);
  CHECK(!dict.dictionaryGet("absent"));
}

TEST_CASE("structural equality is independent of the construction site") {
  CHECK(Attribute::integerType(32) == Attribute::integerType(32));
  CHECK(Attribute::integerType(32) != Attribute::integerType(31));
  CHECK(Attribute::indexType() == Attribute::indexType());
  CHECK(Attribute::integerType(32).hash() == Attribute::integerType(32).hash());
  CHECK(Attribute::string("a") != Attribute::string("b"));

  Attribute arr1 = Attribute::array({makeIntegerAttr(2, 32), makeIntegerAttr(5, 32)});
  Attribute arr2 = Attribute::array({makeIntegerAttr(2, 32), makeIntegerAttr(5, 32)});
  CHECK(arr1 == arr2);
  CHECK(arr1.hash() == arr2.hash());
  CHECK(arr1 != Attribute::array({makeIntegerAttr(2, 32)}));

  Attribute fn1 = Attribute::functionType({Attribute::integerType(32)},
                                          {Attribute::floatType(32)});
  Attribute fn2 = Attribute::functionType({Attribute::integerType(32)},
                                          {Attribute::floatType(32)});
  CHECK(fn1 == fn2);
  CHECK(fn1 != Attribute::functionType({}, {Attribute::floatType(32)}));

  Attribute p1 = Attribute::parametrized("cmath", "complex",
                                         {Attribute::floatType(32)}, true);
  Attribute p2 = Attribute::parametrized("cmath", "complex",
                                         {Attribute::floatType(32)}, true);
  CHECK(p1 == p2);
  CHECK(p1 != Attribute::parametrized("cmath", "complex",
                                      {Attribute::floatType(64)}, true));
  CHECK(Attribute::opaque("foo", "bar", "a<b>", false) ==
        Attribute::opaque("foo", "bar", "a<b>", false));
  CHECK(Attribute::opaque("foo", "bar", "a<b>", false) !=
        Attribute::opaque("foo", "bar", "a<c>", false));
}

TEST_CASE("type queries and literal types") {
  CHECK(Attribute::integerType(32).isType());
  CHECK(Attribute::indexType().isType());
  CHECK(!Attribute::string("x").isType());
  CHECK(Attribute::integerType(7).isIntegerOrIndexType());
  CHECK(Attribute::indexType().isIntegerOrIndexType());
  CHECK(!Attribute::floatType(32).isIntegerOrIndexType());

  CHECK(makeIntegerAttr(42, 32).valueType() == Attribute::integerType(32));
  CHECK(Attribute::floating(1.0, Attribute::floatType(64)).valueType() ==
        Attribute::floatType(64));
  CHECK(!Attribute::string("x").valueType());
  CHECK(!Attribute().operator bool());
}

TEST_CASE("base views expose canonical decompositions") {
  AttrBaseView intType = Attribute::integerType(32).baseView();
  CHECK(intType.valid);
  CHECK(intType.base == "builtin.integer_type");
  CHECK(intType.parameters.empty());

  CHECK(Attribute::indexType().baseView().base == "builtin.index_type");
  CHECK(Attribute::floatType(16).baseView().base == "builtin.float_type");
  CHECK(Attribute::functionType({}, {}).baseView().base ==
        "builtin.function_type");
  CHECK(Attribute::string("s").baseView().base == "builtin.string_attr");
  CHECK(Attribute::array({}).baseView().base == "builtin.array_attr");
  CHECK(Attribute::dictionary({}).baseView().base ==
        "builtin.dictionary_attr");

  AttrBaseView intAttr = makeIntegerAttr(42, 32).baseView();
  CHECK(intAttr.base == "builtin.integer_attr");
  REQUIRE(intAttr.parameters.size() == 1);
  CHECK(intAttr.parameters[0] == Attribute::integerType(32));

  AttrBaseView floatAttr =
      Attribute::floating(1.0, Attribute::floatType(32)).baseView();
  CHECK(floatAttr.base == "builtin.float_attr");
  REQUIRE(floatAttr.parameters.size() == 1);
  CHECK(floatAttr.parameters[0] == Attribute::floatType(32));

  AttrBaseView param = Attribute::parametrized(
                           "cmath", "complex", {Attribute::floatType(32)}, true)
                           .baseView();
  CHECK(param.valid);
  CHECK(param.base == "cmath.complex");
  REQUIRE(param.parameters.size() == 1);
  CHECK(param.parameters[0] == Attribute::floatType(32));

  CHECK(!Attribute::opaque("foo", "bar", "", false).baseView().valid);
}

TEST_CASE("accessor queries reject mismatched kinds") {
  Attribute i32 = Attribute::integerType(32);
  CHECK(i32.asIntegerType() != nullptr);
  CHECK(i32.asFloatType() == nullptr);
  CHECK(i32.asInteger() == nullptr);
  CHECK(i32.getIf<IntegerTypeData>() != nullptr);
  CHECK(i32.getIf<StringAttrData>() == nullptr);
  CHECK(Attribute().asIntegerType() == nullptr);
}
