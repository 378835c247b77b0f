#pragma once

#include <string>
#include <vector>

namespace rgtv {

/// Odd-sized square blur kernel, row-major, origin at the center tap.
/// Public operations that emit a Kernel guarantee non-negative taps summing to 1.
struct Kernel {
    int size = 1;
    std::vector<double> taps{1.0};

    Kernel() = default;
    Kernel(int size, std::vector<double> taps);

    static Kernel delta(int size);

    int radius() const { return size / 2; }
    double operator()(int row, int col) const { return taps[static_cast<std::size_t>(row) * size + col]; }
    double& operator()(int row, int col) { return taps[static_cast<std::size_t>(row) * size + col]; }

    double sum() const;
    /// Non-negative, finite, and summing to one within `tol`.
    bool is_normalized(double tol = 1e-9) const;
    /// Throws InvalidInput unless is_normalized(tol).
    void require_normalized(double tol = 1e-9) const;

    bool operator==(const Kernel&) const = default;
};

/// Rounds to the nearest integer, bumps even results up by one and never
/// returns less than 3.
int odd_round(double h);

/// Text format: first line `h`, then h lines of h space-separated floats.
/// Negative taps are rejected; the kernel is renormalized when its sum is
/// within 1e-3 of one and rejected otherwise.
Kernel parse_kernel_text(const std::string& text);
std::string format_kernel_text(const Kernel& k);

}  // namespace rgtv
