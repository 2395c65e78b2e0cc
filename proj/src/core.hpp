#pragma once

#include <cstdint>
#include <vector>

namespace swp {

/// Bits are stored one per byte, values restricted to {0, 1}.
using BitVector = std::vector<std::uint8_t>;

/// Log-likelihood ratios; positive means bit 0 is more likely.
using LlrVector = std::vector<double>;

/// Saturation magnitude used for "certain" LLRs (noiseless and BEC inputs).
inline constexpr double kLlrMax = 1e9;

bool is_power_of_two(std::uint32_t v);
std::uint32_t log2_exact(std::uint32_t v);

struct DesignChannel {
    enum class Kind { bec, awgn };

    Kind kind = Kind::awgn;
    double erasure_prob = 0.5; // BEC design parameter
    double ebn0_db = 0.0;      // AWGN design Eb/N0 in dB

    static DesignChannel bec(double delta);
    static DesignChannel awgn(double ebn0_db);
    void validate() const;
};

/// One code instance: length N, window M, S = N/M windows, dimension K.
struct CodeConfig {
    std::uint32_t block_length = 0;  // N
    std::uint32_t window_length = 0; // M
    std::uint32_t info_length = 0;   // K
    DesignChannel design;

    std::uint32_t window_count() const { return block_length / window_length; } // S
    std::uint32_t stages() const;        // n = log2 N
    std::uint32_t window_stages() const; // m = log2 M
    double rate() const { return static_cast<double>(info_length) / block_length; }

    void validate() const;
};

/// Sorted set of distinct indices in [0, N).
class IndexSet {
  public:
    IndexSet() = default;
    explicit IndexSet(std::vector<std::uint32_t> indices);

    static IndexSet complement_of(const IndexSet& set, std::uint32_t universe);

    bool contains(std::uint32_t index) const;
    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    const std::vector<std::uint32_t>& indices() const { return indices_; }

    auto begin() const { return indices_.begin(); }
    auto end() const { return indices_.end(); }

    bool operator==(const IndexSet&) const = default;

  private:
    std::vector<std::uint32_t> indices_;
};

/// Dense 0/1 matrix, row-major. Only used by construction oracles and the
/// reference encoder; production paths never materialize transforms.
class BinaryMatrix {
  public:
    BinaryMatrix() = default;
    BinaryMatrix(std::uint32_t rows, std::uint32_t cols);

    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }

    std::uint8_t at(std::uint32_t r, std::uint32_t c) const { return data_[std::size_t{r} * cols_ + c]; }
    void set(std::uint32_t r, std::uint32_t c, std::uint8_t v) { data_[std::size_t{r} * cols_ + c] = v; }

    bool operator==(const BinaryMatrix&) const = default;

    /// Row-vector times matrix over GF(2).
    BitVector mul_left(const BitVector& u) const;

    bool is_lower_triangular_unit_diagonal() const;

  private:
    std::uint32_t rows_ = 0;
    std::uint32_t cols_ = 0;
    std::vector<std::uint8_t> data_;
};

/// S x S lower-triangular all-ones coupling kernel.
BinaryMatrix make_ws_kernel(std::uint32_t s);

/// 2^m x 2^m Kronecker power of the Arikan kernel, natural bit order.
BinaryMatrix polar_transform(std::uint32_t m);

BinaryMatrix kronecker(const BinaryMatrix& a, const BinaryMatrix& b);

} // namespace swp
