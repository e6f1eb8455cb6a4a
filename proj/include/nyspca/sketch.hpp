#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "nyspca/mat.hpp"

namespace nyspca {

enum class Axis { columns, rows };

/// The sketch S = πτ, held implicitly as the ordered list of kept indices.
/// Indices stay in draw order, so the selected block inherits π.
struct Selection {
  std::vector<std::size_t> indices;
  std::size_t q = 0;
  std::uint64_t seed = 0;
  Axis axis = Axis::columns;

  std::size_t l() const noexcept { return indices.size(); }
  /// Non-selected indices, ascending.
  std::vector<std::size_t> complement() const;
  /// indices followed by complement(): the row order of L(A) = [A11; A21].
  std::vector<std::size_t> permutation() const;

  friend bool operator==(const Selection&, const Selection&) = default;
};

/// l distinct indices from [0, q) by seeded partial Fisher-Yates.
Selection sample_uniform(std::size_t q, std::size_t l, std::uint64_t seed,
                         Axis axis = Axis::columns);

/// Wraps an explicit index list after validating it (distinct, in range, nonempty).
Selection make_selection(std::vector<std::size_t> indices, std::size_t q,
                         Axis axis = Axis::columns);

struct Blocks {
  Mat a11;  // l x l
  Mat a21;  // (q - l) x l, rows in ascending original order
  Mat l;    // [a11; a21]
};

Blocks extract_blocks(const Mat& a, const Selection& sel);

/// x1 = X S for a column selection, X1 = Sᵀ X for a row selection.
Mat subsample_columns(const Mat& x, const Selection& sel);

struct StreamStats {
  std::size_t peak_entries = 0;  // largest simultaneous count of buffered doubles
  std::size_t rows_read = 0;
};

/// Reads only the selected columns of a DMAT file, one row at a time.
Mat stream_columns(const std::filesystem::path& path, const Selection& sel,
                   StreamStats* stats = nullptr);

}  // namespace nyspca
