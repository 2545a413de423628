#ifndef PARLIKE_RENDER_HPP
#define PARLIKE_RENDER_HPP

// Escape-time rasters of filled Julia sets (of z + 1/z + A or of an
// assembled parabolic-like map) and of the A-plane. Rows are independent,
// so the output does not depend on the thread count.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "parlike/plm.hpp"

namespace parlike {

struct Viewport {
    Complex center;
    double width = 4.0;
    double height = 4.0;
    int px_w = 512;
    int px_h = 512;

    void validate() const;
    // Center of pixel (i, j); row 0 at the top.
    Complex pixel(int i, int j) const;
};

struct RasterImage {
    int px_w = 0;
    int px_h = 0;
    std::vector<std::uint8_t> pixels;  // row-major RGB

    std::array<std::uint8_t, 3> at(int i, int j) const;
};

struct PixelClass {
    enum Kind { InK, Escaped, Undecided } kind = InK;
    int step = 0;
};

PixelClass classify_perone(Complex A, Complex z, int max_iter);

// Hue (k mod 64) / 64 at full saturation and value.
std::array<std::uint8_t, 3> palette_color(int k);

inline constexpr int kJuliaMaxIter = 2000;
inline constexpr int kParamMaxIter = 500;

// threads <= 0 means the hardware concurrency.
RasterImage render_julia(Complex A, const Viewport& vp, int max_iter = kJuliaMaxIter, int threads = 0);
RasterImage render_julia(const PLMap& plm, const Viewport& vp, int max_iter = kJuliaMaxIter, int threads = 0);
RasterImage render_paramplane(const Viewport& vp, int max_iter = kParamMaxIter, int threads = 0);

// 0 for black (in K / in the locus), 128 for undecided gray, 255 otherwise.
std::vector<std::uint8_t> k_mask(const RasterImage& img);

std::string ppm_bytes(const RasterImage& img);
std::string pgm_bytes(int px_w, int px_h, const std::vector<std::uint8_t>& gray);
// Throw std::runtime_error on I/O failure.
void write_ppm(const RasterImage& img, const std::string& path);
void write_pgm(int px_w, int px_h, const std::vector<std::uint8_t>& gray, const std::string& path);

}  // namespace parlike

#endif  // PARLIKE_RENDER_HPP
