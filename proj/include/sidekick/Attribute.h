//===- Attribute.h - Immutable attribute and type values ------*- C++ -*-===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Attributes are immutable trees compared structurally. Types are attributes
// with the is-type flag set; every SSA value carries one as its type. Sharing
// is by cheap handle copy; the underlying storage is never mutated after
// construction.
//
//===----------------------------------------------------------------------===//

#ifndef SIDEKICK_ATTRIBUTE_H
#define SIDEKICK_ATTRIBUTE_H

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sidekick {

struct AttrData;
class Attribute;

enum class AttrKind {
  IntegerType,
  IndexType,
  FloatType,
  FunctionType,
  IntegerAttr,
  FloatAttr,
  StringAttr,
  ArrayAttr,
  DictionaryAttr,
  ParametrizedAttr,
  OpaqueAttr,
};

/// Canonical (base-name, parameters) view used by Parametric constraint
/// matching. Builtin kinds expose fixed decompositions: scalar types and
/// string/array/dictionary attrs expose zero parameters, integer/float
/// literal attrs expose exactly their type. Opaque attrs expose nothing.
struct AttrBaseView {
  bool valid = false;
  std::string base; // "dialect.mnemonic"
  std::vector<Attribute> parameters;
};

class Attribute {
public:
  Attribute() = default;

  explicit operator bool() const { return data != nullptr; }
  AttrKind kind() const;
  bool isType() const;

  /// Structural equality (pointer and hash fast paths).
  bool operator==(const Attribute &other) const;
  bool operator!=(const Attribute &other) const { return !(*this == other); }
  size_t hash() const;

  // -- Factories ----------------------------------------------------------
  static Attribute integerType(unsigned width); // asserts 1 <= width <= 64
  static Attribute indexType();
  static Attribute floatType(unsigned width); // asserts width in {16,32,64}
  static Attribute functionType(std::vector<Attribute> inputs,
                                std::vector<Attribute> results);
  /// Builds an IntegerAttr over an IntegerType or IndexType; the value is
  /// canonicalized modulo 2^width into [-2^(width-1), 2^(width-1)-1]
  /// (index uses 64-bit storage).
  static Attribute integer(int64_t value, Attribute type);
  /// Builds a FloatAttr; the value is rounded to the type's width.
  static Attribute floating(double value, Attribute type);
  static Attribute string(std::string text);
  static Attribute array(std::vector<Attribute> elements);
  /// Sorts entries by key; asserts keys are unique.
  static Attribute
  dictionary(std::vector<std::pair<std::string, Attribute>> entries);
  static Attribute parametrized(std::string dialect, std::string mnemonic,
                                std::vector<Attribute> parameters, bool isType);
  static Attribute opaque(std::string dialect, std::string mnemonic,
                          std::string body, bool isType);

  // -- Accessors (return nullptr when the kind does not match) -------------
  template <typename T> const T *getIf() const;
  const struct IntegerTypeData *asIntegerType() const;
  const struct IndexTypeData *asIndexType() const;
  const struct FloatTypeData *asFloatType() const;
  const struct FunctionTypeData *asFunctionType() const;
  const struct IntegerAttrData *asInteger() const;
  const struct FloatAttrData *asFloat() const;
  const struct StringAttrData *asString() const;
  const struct ArrayAttrData *asArray() const;
  const struct DictionaryAttrData *asDictionary() const;
  const struct ParametrizedAttrData *asParametrized() const;
  const struct OpaqueAttrData *asOpaque() const;

  /// Type of an integer/float literal attribute (null for other kinds).
  Attribute valueType() const;

  /// Decomposition for Parametric matching; view.valid is false for opaque
  /// and null attributes.
  AttrBaseView baseView() const;

  /// True for i1..i64 and index.
  bool isIntegerOrIndexType() const;

  /// Dictionary lookup helper; null when absent or not a dictionary.
  Attribute dictionaryGet(std::string_view key) const;

private:
  explicit Attribute(std::shared_ptr<const AttrData> d) : data(std::move(d)) {}
  static Attribute make(struct AttrVariantBox v);

  std::shared_ptr<const AttrData> data;
};

struct IntegerTypeData {
  unsigned width; // 1..64
};
struct IndexTypeData {};
struct FloatTypeData {
  unsigned width; // 16, 32, or 64
};
struct FunctionTypeData {
  std::vector<Attribute> inputs;
  std::vector<Attribute> results;
};
struct IntegerAttrData {
  int64_t value;  // canonical two's-complement representative for the width
  Attribute type; // IntegerType or IndexType
};
struct FloatAttrData {
  double value;   // exactly representable at the type's width
  Attribute type; // FloatType
};
struct StringAttrData {
  std::string value;
};
struct ArrayAttrData {
  std::vector<Attribute> elements;
};
struct DictionaryAttrData {
  // Keys strictly increasing.
  std::vector<std::pair<std::string, Attribute>> entries;
};
struct ParametrizedAttrData {
  std::string dialect;
  std::string mnemonic;
  std::vector<Attribute> parameters;
  bool isType;
};
struct OpaqueAttrData {
  std::string dialect;
  std::string mnemonic;
  std::string body; // verbatim balanced-bracket text; empty = no body
  bool isType;
};

using AttrVariant =
    std::variant<IntegerTypeData, IndexTypeData, FloatTypeData,
                 FunctionTypeData, IntegerAttrData, FloatAttrData,
                 StringAttrData, ArrayAttrData, DictionaryAttrData,
                 ParametrizedAttrData, OpaqueAttrData>;

/// Move-only box so factories can forward the variant through a single
/// construction path that computes the structural hash once.
struct AttrVariantBox {
  AttrVariant value;
};

struct AttrData {
  AttrVariant value;
  size_t hash;
};

template <typename T> const T *Attribute::getIf() const {
  return data ? std::get_if<T>(&data->value) : nullptr;
}
inline const IntegerTypeData *Attribute::asIntegerType() const {
  return getIf<IntegerTypeData>();
}
inline const IndexTypeData *Attribute::asIndexType() const {
  return getIf<IndexTypeData>();
}
inline const FloatTypeData *Attribute::asFloatType() const {
  return getIf<FloatTypeData>();
}
inline const FunctionTypeData *Attribute::asFunctionType() const {
  return getIf<FunctionTypeData>();
}
inline const IntegerAttrData *Attribute::asInteger() const {
  return getIf<IntegerAttrData>();
}
inline const FloatAttrData *Attribute::asFloat() const {
  return getIf<FloatAttrData>();
}
inline const StringAttrData *Attribute::asString() const {
  return getIf<StringAttrData>();
}
inline const ArrayAttrData *Attribute::asArray() const {
  return getIf<ArrayAttrData>();
}
inline const DictionaryAttrData *Attribute::asDictionary() const {
  return getIf<DictionaryAttrData>();
}
inline const ParametrizedAttrData *Attribute::asParametrized() const {
  return getIf<ParametrizedAttrData>();
}
inline const OpaqueAttrData *Attribute::asOpaque() const {
  return getIf<OpaqueAttrData>();
}
inline size_t Attribute::hash() const { return data ? data->hash : 0; }

struct AttributeHasher {
  size_t operator()(const Attribute &a) const { return a.hash(); }
};

/// Canonical two's-complement representative of `value` at `width` bits.
int64_t canonicalizeInteger(int64_t value, unsigned width);

/// Round a double to the nearest value representable at the given float
/// width (16, 32, or 64).
double roundToFloatWidth(double value, unsigned width);

} // namespace sidekick

#endif // SIDEKICK_ATTRIBUTE_H
