//===- Attribute.cpp - Immutable attribute storage -----------------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "sidekick/Attribute.h"
#include "sidekick/Support.h"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstring>

using namespace sidekick;

int64_t sidekick::canonicalizeInteger(int64_t value, unsigned width) {
  assert(width >= 1 && width <= 64);
  if (width == 64)
    return value;
  uint64_t mask = (uint64_t(1) << width) - 1;
  uint64_t u = uint64_t(value) & mask;
  uint64_t signBit = uint64_t(1) << (width - 1);
  if (u & signBit)
    return int64_t(u) - int64_t(uint64_t(1) << width);
  return int64_t(u);
}

namespace {

// IEEE binary16 <-> binary32, round to nearest even. Self-contained so the
// stored double is bit-exact regardless of compiler support for _Float16.
uint16_t floatToHalfBits(float f) {
  uint32_t bits = std::bit_cast<uint32_t>(f);
  uint32_t sign = (bits >> 16) & 0x8000u;
  int32_t exponent = int32_t((bits >> 23) & 0xff) - 127 + 15;
  uint32_t mantissa = bits & 0x7fffffu;

  if (exponent >= 0x1f) {
    // Overflow to infinity; NaN keeps a mantissa bit.
    uint32_t nanBit = (((bits >> 23) & 0xff) == 0xff && mantissa) ? 0x200u : 0;
    return uint16_t(sign | 0x7c00u | nanBit);
  }
  if (exponent <= 0) {
    if (exponent < -10)
      return uint16_t(sign); // rounds to zero
    // Subnormal: shift in the implicit bit, round to nearest even.
    mantissa |= 0x800000u;
    unsigned shift = unsigned(14 - exponent);
    uint32_t half = mantissa >> shift;
    uint32_t rem = mantissa & ((1u << shift) - 1);
    uint32_t halfway = 1u << (shift - 1);
    if (rem > halfway || (rem == halfway && (half & 1)))
      ++half;
    return uint16_t(sign | half);
  }
  uint32_t half = uint32_t(exponent) << 10 | mantissa >> 13;
  uint32_t rem = mantissa & 0x1fffu;
  if (rem > 0x1000u || (rem == 0x1000u && (half & 1)))
    ++half; // may carry into the exponent, which is the correct behavior
  return uint16_t(sign | half);
}

float halfBitsToFloat(uint16_t h) {
  uint32_t sign = uint32_t(h & 0x8000u) << 16;
  uint32_t exponent = (h >> 10) & 0x1f;
  uint32_t mantissa = h & 0x3ffu;
  uint32_t bits;
  if (exponent == 0) {
    if (mantissa == 0) {
      bits = sign;
    } else {
      // Normalize the subnormal.
      int shift = 0;
      while (!(mantissa & 0x400u)) {
        mantissa <<= 1;
        ++shift;
      }
      mantissa &= 0x3ffu;
      bits = sign | uint32_t(127 - 15 - shift) << 23 | mantissa << 13;
    }
  } else if (exponent == 0x1f) {
    bits = sign | 0x7f800000u | mantissa << 13;
  } else {
    bits = sign | (exponent - 15 + 127) << 23 | mantissa << 13;
  }
  return std::bit_cast<float>(bits);
}

size_t hashString(std::string_view s) {
  return std::hash<std::string_view>{}(s);
}

size_t computeHash(const AttrVariant &v) {
  size_t seed = v.index();
  std::visit(
      [&](const auto &d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, IntegerTypeData>) {
          hashCombine(seed, d.width);
        } else if constexpr (std::is_same_v<T, IndexTypeData>) {
          hashCombine(seed, 0x1d);
        } else if constexpr (std::is_same_v<T, FloatTypeData>) {
          hashCombine(seed, d.width);
        } else if constexpr (std::is_same_v<T, FunctionTypeData>) {
          hashCombine(seed, d.inputs.size());
          for (const Attribute &a : d.inputs)
            hashCombine(seed, a.hash());
          hashCombine(seed, d.results.size());
          for (const Attribute &a : d.results)
            hashCombine(seed, a.hash());
        } else if constexpr (std::is_same_v<T, IntegerAttrData>) {
          hashCombine(seed, size_t(uint64_t(d.value)));
          hashCombine(seed, d.type.hash());
        } else if constexpr (std::is_same_v<T, FloatAttrData>) {
          // Bit equality (so -0.0 and 0.0 stay distinct, matching printing).
          hashCombine(seed, size_t(std::bit_cast<uint64_t>(d.value)));
          hashCombine(seed, d.type.hash());
        } else if constexpr (std::is_same_v<T, StringAttrData>) {
          hashCombine(seed, hashString(d.value));
        } else if constexpr (std::is_same_v<T, ArrayAttrData>) {
          for (const Attribute &a : d.elements)
            hashCombine(seed, a.hash());
        } else if constexpr (std::is_same_v<T, DictionaryAttrData>) {
          for (const auto &[k, a] : d.entries) {
            hashCombine(seed, hashString(k));
            hashCombine(seed, a.hash());
          }
        } else if constexpr (std::is_same_v<T, ParametrizedAttrData>) {
          hashCombine(seed, hashString(d.dialect));
          hashCombine(seed, hashString(d.mnemonic));
          for (const Attribute &a : d.parameters)
            hashCombine(seed, a.hash());
          hashCombine(seed, d.isType ? 1 : 0);
        } else if constexpr (std::is_same_v<T, OpaqueAttrData>) {
          hashCombine(seed, hashString(d.dialect));
          hashCombine(seed, hashString(d.mnemonic));
          hashCombine(seed, hashString(d.body));
          hashCombine(seed, d.isType ? 1 : 0);
        }
      },
      v);
  return seed;
}

bool equalVariant(const AttrVariant &a, const AttrVariant &b) {
  if (a.index() != b.index())
    return false;
  return std::visit(
      [&](const auto &da) {
        using T = std::decay_t<decltype(da)>;
        const T &db = std::get<T>(b);
        if constexpr (std::is_same_v<T, IntegerTypeData>) {
          return da.width == db.width;
        } else if constexpr (std::is_same_v<T, IndexTypeData>) {
          return true;
        } else if constexpr (std::is_same_v<T, FloatTypeData>) {
          return da.width == db.width;
        } else if constexpr (std::is_same_v<T, FunctionTypeData>) {
          return da.inputs == db.inputs && da.results == db.results;
        } else if constexpr (std::is_same_v<T, IntegerAttrData>) {
          return da.value == db.value && da.type == db.type;
        } else if constexpr (std::is_same_v<T, FloatAttrData>) {
          return std::bit_cast<uint64_t>(da.value) ==
                     std::bit_cast<uint64_t>(db.value) &&
                 da.type == db.type;
        } else if constexpr (std::is_same_v<T, StringAttrData>) {
          return da.value == db.value;
        } else if constexpr (std::is_same_v<T, ArrayAttrData>) {
          return da.elements == db.elements;
        } else if constexpr (std::is_same_v<T, DictionaryAttrData>) {
          return da.entries == db.entries;
        } else if constexpr (std::is_same_v<T, ParametrizedAttrData>) {
          return da.dialect == db.dialect && da.mnemonic == db.mnemonic &&
                 da.isType == db.isType && da.parameters == db.parameters;
        } else if constexpr (std::is_same_v<T, OpaqueAttrData>) {
          return da.dialect == db.dialect && da.mnemonic == db.mnemonic &&
                 da.body == db.body && da.isType == db.isType;
        }
      },
      a);
}

} // namespace

double sidekick::roundToFloatWidth(double value, unsigned width) {
  switch (width) {
  case 16:
    return double(halfBitsToFloat(floatToHalfBits(float(value))));
  case 32:
    return double(float(value));
  case 64:
    return value;
  }
  assert(false && "float width must be 16, 32, or 64");
  return value;
}

Attribute Attribute::make(AttrVariantBox box) {
  auto data = std::make_shared<AttrData>();
  data->value = std::move(box.value);
  data->hash = computeHash(data->value);
  return Attribute(std::move(data));
}

AttrKind Attribute::kind() const {
  assert(data && "kind() on null attribute");
  return AttrKind(data->value.index());
}

bool Attribute::isType() const {
  switch (kind()) {
  case AttrKind::IntegerType:
  case AttrKind::IndexType:
  case AttrKind::FloatType:
  case AttrKind::FunctionType:
    return true;
  case AttrKind::ParametrizedAttr:
    return asParametrized()->isType;
  case AttrKind::OpaqueAttr:
    return asOpaque()->isType;
  default:
    return false;
  }
}

bool Attribute::operator==(const Attribute &other) const {
  if (data == other.data)
    return true;
  if (!data || !other.data)
    return false;
  if (data->hash != other.data->hash)
    return false;
  return equalVariant(data->value, other.data->value);
}

Attribute Attribute::integerType(unsigned width) {
  assert(width >= 1 && width <= 64 && "integer width out of range");
  // Common widths are shared; structural equality keeps this unobservable.
  static const Attribute i1 = make({IntegerTypeData{1}});
  static const Attribute i8 = make({IntegerTypeData{8}});
  static const Attribute i16 = make({IntegerTypeData{16}});
  static const Attribute i32 = make({IntegerTypeData{32}});
  static const Attribute i64 = make({IntegerTypeData{64}});
  switch (width) {
  case 1:
    return i1;
  case 8:
    return i8;
  case 16:
    return i16;
  case 32:
    return i32;
  case 64:
    return i64;
  default:
    return make({IntegerTypeData{width}});
  }
}

Attribute Attribute::indexType() {
  static const Attribute index = make({IndexTypeData{}});
  return index;
}

Attribute Attribute::floatType(unsigned width) {
  assert((width == 16 || width == 32 || width == 64) &&
         "float width must be 16, 32, or 64");
  static const Attribute f16 = make({FloatTypeData{16}});
  static const Attribute f32 = make({FloatTypeData{32}});
  static const Attribute f64 = make({FloatTypeData{64}});
  return width == 16 ? f16 : width == 32 ? f32 : f64;
}

Attribute Attribute::functionType(std::vector<Attribute> inputs,
                                  std::vector<Attribute> results) {
#ifndef NDEBUG
  for (const Attribute &a : inputs)
    assert(a && a.isType() && "function type inputs must be types");
  for (const Attribute &a : results)
    assert(a && a.isType() && "function type results must be types");
#endif
  return make({FunctionTypeData{std::move(inputs), std::move(results)}});
}

Attribute Attribute::integer(int64_t value, Attribute type) {
  assert(type && "integer attr requires a type");
  if (const IntegerTypeData *it = type.asIntegerType())
    value = canonicalizeInteger(value, it->width);
  else
    assert(type.asIndexType() && "integer attr type must be integer or index");
  return make({IntegerAttrData{value, std::move(type)}});
}

Attribute Attribute::floating(double value, Attribute type) {
  const FloatTypeData *ft = type.asFloatType();
  assert(ft && "float attr type must be a float type");
  value = roundToFloatWidth(value, ft->width);
  assert(std::isfinite(value) &&
         "float attrs store finite values only (the textual format has no "
         "non-finite literals)");
  return make({FloatAttrData{value, std::move(type)}});
}

Attribute Attribute::string(std::string text) {
  return make({StringAttrData{std::move(text)}});
}

Attribute Attribute::array(std::vector<Attribute> elements) {
  return make({ArrayAttrData{std::move(elements)}});
}

Attribute Attribute::dictionary(
    std::vector<std::pair<std::string, Attribute>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
#ifndef NDEBUG
  for (size_t i = 1; i < entries.size(); ++i)
    assert(entries[i - 1].first != entries[i].first &&
           "dictionary keys must be unique");
#endif
  return make({DictionaryAttrData{std::move(entries)}});
}

Attribute Attribute::parametrized(std::string dialect, std::string mnemonic,
                                  std::vector<Attribute> parameters,
                                  bool isType) {
  assert(!dialect.empty() && !mnemonic.empty());
  return make({ParametrizedAttrData{std::move(dialect), std::move(mnemonic),
                                    std::move(parameters), isType}});
}

Attribute Attribute::opaque(std::string dialect, std::string mnemonic,
                            std::string body, bool isType) {
  assert(!dialect.empty() && !mnemonic.empty());
  return make({OpaqueAttrData{std::move(dialect), std::move(mnemonic),
                              std::move(body), isType}});
}

Attribute Attribute::valueType() const {
  if (const IntegerAttrData *d = asInteger())
    return d->type;
  if (const FloatAttrData *d = asFloat())
    return d->type;
  return Attribute();
}

AttrBaseView Attribute::baseView() const {
  AttrBaseView view;
  if (!data)
    return view;
  switch (kind()) {
  case AttrKind::IntegerType:
    view = {true, "builtin.integer_type", {}};
    break;
  case AttrKind::IndexType:
    view = {true, "builtin.index_type", {}};
    break;
  case AttrKind::FloatType:
    view = {true, "builtin.float_type", {}};
    break;
  case AttrKind::FunctionType:
    view = {true, "builtin.function_type", {}};
    break;
  case AttrKind::IntegerAttr:
    view = {true, "builtin.integer_attr", {asInteger()->type}};
    break;
  case AttrKind::FloatAttr:
    view = {true, "builtin.float_attr", {asFloat()->type}};
    break;
  case AttrKind::StringAttr:
    view = {true, "builtin.string_attr", {}};
    break;
  case AttrKind::ArrayAttr:
    view = {true, "builtin.array_attr", {}};
    break;
  case AttrKind::DictionaryAttr:
    view = {true, "builtin.dictionary_attr", {}};
    break;
  case AttrKind::ParametrizedAttr: {
    const ParametrizedAttrData *d = asParametrized();
    view = {true, d->dialect + "." + d->mnemonic, d->parameters};
    break;
  }
  case AttrKind::OpaqueAttr:
    break; // parameters unknown; never matches Parametric
  }
  return view;
}

bool Attribute::isIntegerOrIndexType() const {
  return data && (asIntegerType() || asIndexType());
}

Attribute Attribute::dictionaryGet(std::string_view key) const {
  const DictionaryAttrData *d = asDictionary();
  if (!d)
    return Attribute();
  auto it = std::lower_bound(
      d->entries.begin(), d->entries.end(), key,
      [](const auto &entry, std::string_view k) { return entry.first < k; });
  if (it != d->entries.end() && it->first == key)
    return it->second;
  return Attribute();
}
