#include "nyspca/sketch.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "nyspca/errors.hpp"
#include "nyspca/io.hpp"
#include "nyspca/rng.hpp"

namespace nyspca {

std::vector<std::size_t> Selection::complement() const {
  std::vector<char> taken(q, 0);
  for (std::size_t i : indices) taken[i] = 1;
  std::vector<std::size_t> rest;
  rest.reserve(q - indices.size());
  for (std::size_t i = 0; i < q; ++i)
    if (!taken[i]) rest.push_back(i);
  return rest;
}

std::vector<std::size_t> Selection::permutation() const {
  std::vector<std::size_t> perm = indices;
  const auto rest = complement();
  perm.insert(perm.end(), rest.begin(), rest.end());
  return perm;
}

Selection sample_uniform(std::size_t q, std::size_t l, std::uint64_t seed, Axis axis) {
  if (l == 0 || l > q)
    throw InvalidParameter("sample_uniform: need 1 <= l <= q, got l = " + std::to_string(l) +
                           ", q = " + std::to_string(q));
  CounterRng rng(seed, streams::selection);
  std::vector<std::size_t> pool(q);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < l; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.next_below(q - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(l);
  return Selection{std::move(pool), q, seed, axis};
}

Selection make_selection(std::vector<std::size_t> indices, std::size_t q, Axis axis) {
  if (indices.empty() || indices.size() > q)
    throw InvalidParameter("make_selection: need 1 <= l <= q");
  std::vector<char> seen(q, 0);
  for (std::size_t i : indices) {
    if (i >= q) throw InvalidParameter("make_selection: index " + std::to_string(i) + " out of range");
    if (seen[i]) throw InvalidParameter("make_selection: duplicate index " + std::to_string(i));
    seen[i] = 1;
  }
  return Selection{std::move(indices), q, 0, axis};
}

namespace {
void check_indices(const Selection& sel) {
  for (std::size_t i : sel.indices)
    if (i >= sel.q) throw InvalidParameter("selection index " + std::to_string(i) + " out of range");
}
}  // namespace

Blocks extract_blocks(const Mat& a, const Selection& sel) {
  if (a.rows() != a.cols()) throw InvalidInput("extract_blocks: matrix is not square");
  if (asymmetry(a) > 1e-10 * std::max(1.0, max_abs(a)))
    throw InvalidInput("extract_blocks: matrix is not symmetric");
  if (sel.q != a.rows())
    throw InvalidParameter("extract_blocks: selection dimension " + std::to_string(sel.q) +
                           " != matrix dimension " + std::to_string(a.rows()));
  check_indices(sel);
  const auto rest = sel.complement();
  Blocks b;
  b.a11 = take_block(a, sel.indices, sel.indices);
  b.a21 = take_block(a, rest, sel.indices);
  b.l = vstack(b.a11, b.a21);
  return b;
}

Mat subsample_columns(const Mat& x, const Selection& sel) {
  check_indices(sel);
  if (sel.axis == Axis::columns) {
    if (sel.q != x.cols())
      throw InvalidParameter("subsample_columns: selection q = " + std::to_string(sel.q) +
                             " but matrix has " + std::to_string(x.cols()) + " columns");
    return take_columns(x, sel.indices);
  }
  if (sel.q != x.rows())
    throw InvalidParameter("subsample_columns: row selection q = " + std::to_string(sel.q) +
                           " but matrix has " + std::to_string(x.rows()) + " rows");
  return take_rows(x, sel.indices);
}

Mat stream_columns(const std::filesystem::path& path, const Selection& sel, StreamStats* stats) {
  if (sel.axis != Axis::columns) throw InvalidParameter("stream_columns: selection must be over columns");
  DmatRowReader reader(path);
  if (sel.q != reader.cols())
    throw InvalidParameter("stream_columns: selection q = " + std::to_string(sel.q) +
                           " but file has " + std::to_string(reader.cols()) + " columns");
  check_indices(sel);
  Mat out(reader.rows(), sel.l());
  if (stats) stats->peak_entries = out.size() + reader.buffer_entries();
  std::size_t i = 0;
  while (reader.advance()) {
    auto dst = out.row(i++);
    for (std::size_t k = 0; k < sel.l(); ++k) dst[k] = reader.value(sel.indices[k]);
  }
  if (stats) stats->rows_read = i;
  return out;
}

}  // namespace nyspca
