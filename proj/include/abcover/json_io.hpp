#pragma once

#include "json.hpp"

#include "abcover/cover.hpp"

namespace abcover {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json cover_to_json(const CoverData& data);
CoverData cover_from_json(const Json& doc);

/// Big integers travel as JSON numbers while they fit in 64 bits, as decimal
/// strings beyond that.
Json big_to_json(const BigInt& v);
/// Exact rationals are written "p/q" (or "p" when integral).
Json rational_to_json(const Rational& v);

}  // namespace abcover
