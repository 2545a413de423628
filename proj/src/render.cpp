#include "parlike/render.hpp"

#include <algorithm>
#include <fstream>
#include <thread>

namespace parlike {

namespace {

constexpr std::array<std::uint8_t, 3> kBlack{0, 0, 0};
constexpr std::array<std::uint8_t, 3> kGray{128, 128, 128};

// Row j of the image is owned by thread j mod n, so every byte has exactly
// one writer and the result is independent of scheduling.
template <class PixelFn>
RasterImage render_rows(const Viewport& vp, int threads, PixelFn fn)
{
    vp.validate();
    RasterImage img{vp.px_w, vp.px_h, std::vector<std::uint8_t>(std::size_t(vp.px_w) * vp.px_h * 3)};
    int n = threads > 0 ? threads : int(std::max(1u, std::thread::hardware_concurrency()));
    n = std::min(n, vp.px_h);
    auto work = [&](int t) {
        for (int j = t; j < vp.px_h; j += n)
            for (int i = 0; i < vp.px_w; ++i) {
                const auto c = fn(vp.pixel(i, j));
                std::copy(c.begin(), c.end(), img.pixels.begin() + (std::size_t(j) * vp.px_w + i) * 3);
            }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t)
        pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool)
        th.join();
    return img;
}

std::array<std::uint8_t, 3> color_of(PixelClass c)
{
    switch (c.kind) {
    case PixelClass::InK: return kBlack;
    case PixelClass::Undecided: return kGray;
    case PixelClass::Escaped: break;
    }
    return palette_color(c.step);
}

void write_file(const std::string& bytes, const std::string& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open " + path + " for writing");
    os.write(bytes.data(), std::streamsize(bytes.size()));
    if (!os)
        throw std::runtime_error("write to " + path + " failed");
}

}  // namespace

void Viewport::validate() const
{
    if (!(width > 0.0) || !(height > 0.0))
        throw std::invalid_argument("viewport: width and height must be positive");
    if (px_w <= 0 || px_h <= 0)
        throw std::invalid_argument("viewport: pixel dimensions must be positive");
}

Complex Viewport::pixel(int i, int j) const
{
    return center + Complex(((i + 0.5) / px_w - 0.5) * width, (0.5 - (j + 0.5) / px_h) * height);
}

std::array<std::uint8_t, 3> RasterImage::at(int i, int j) const
{
    const std::size_t o = (std::size_t(j) * px_w + i) * 3;
    return {pixels[o], pixels[o + 1], pixels[o + 2]};
}

PixelClass classify_perone(Complex A, Complex z, int max_iter)
{
    const bool zero = A == Complex(0.0);
    const double r_esc = zero ? 0.0 : std::max(100.0, 10.0 / std::abs(A));
    for (int k = 0; k <= max_iter; ++k) {
        // For A = 0 the right half-plane is invariant and lies in the basin
        // of infinity, so Re z > 0 already certifies escape.
        if (zero ? z.real() > 0.0 : std::abs(z) > r_esc && (z * std::conj(A)).real() > 0.0)
            return {PixelClass::Escaped, k};
        if (k == max_iter || z == Complex(0.0))
            break;  // z = 0 lands on the parabolic point itself
        z = z + 1.0 / z + A;
    }
    return {PixelClass::InK, max_iter};
}

std::array<std::uint8_t, 3> palette_color(int k)
{
    const double h = double(((k % 64) + 64) % 64) / 64.0 * 6.0;
    const int sector = int(h);
    const double f = h - sector;
    double r = 0, g = 0, b = 0;
    switch (sector) {
    case 0: r = 1, g = f, b = 0; break;
    case 1: r = 1 - f, g = 1, b = 0; break;
    case 2: r = 0, g = 1, b = f; break;
    case 3: r = 0, g = 1 - f, b = 1; break;
    case 4: r = f, g = 0, b = 1; break;
    default: r = 1, g = 0, b = 1 - f; break;
    }
    auto byte = [](double x) { return std::uint8_t(std::lround(255.0 * x)); };
    return {byte(r), byte(g), byte(b)};
}

RasterImage render_julia(Complex A, const Viewport& vp, int max_iter, int threads)
{
    return render_rows(vp, threads, [&](Complex z) { return color_of(classify_perone(A, z, max_iter)); });
}

RasterImage render_julia(const PLMap& plm, const Viewport& vp, int max_iter, int threads)
{
    return render_rows(vp, threads, [&](Complex z) {
        const JuliaMembership m = in_filled_julia(plm, z, max_iter);
        switch (m.kind) {
        case JuliaMembership::Inside: return kBlack;
        case JuliaMembership::Undecided: return kGray;
        case JuliaMembership::Escaped: break;
        }
        return palette_color(m.step);
    });
}

RasterImage render_paramplane(const Viewport& vp, int max_iter, int threads)
{
    return render_rows(vp, threads, [&](Complex A) {
        // At A = 0 the drift rule has an infinite escape radius, so the
        // pixel is in the locus.
        if (A == Complex(0.0))
            return kBlack;
        int later = 0;
        for (Complex c : {Complex(1.0), Complex(-1.0)}) {
            const PixelClass p = classify_perone(A, c, max_iter);
            if (p.kind != PixelClass::Escaped)
                return kBlack;
            later = std::max(later, p.step);
        }
        return palette_color(later);
    });
}

std::vector<std::uint8_t> k_mask(const RasterImage& img)
{
    std::vector<std::uint8_t> out(std::size_t(img.px_w) * img.px_h);
    for (std::size_t p = 0; p < out.size(); ++p) {
        const std::uint8_t* c = &img.pixels[3 * p];
        if (c[0] == 0 && c[1] == 0 && c[2] == 0)
            out[p] = 0;
        else if (c[0] == 128 && c[1] == 128 && c[2] == 128)
            out[p] = 128;
        else
            out[p] = 255;
    }
    return out;
}

std::string ppm_bytes(const RasterImage& img)
{
    std::string s = "P6\n" + std::to_string(img.px_w) + " " + std::to_string(img.px_h) + "\n255\n";
    s.append(img.pixels.begin(), img.pixels.end());
    return s;
}

std::string pgm_bytes(int px_w, int px_h, const std::vector<std::uint8_t>& gray)
{
    if (gray.size() != std::size_t(px_w) * px_h)
        throw std::invalid_argument("pgm: buffer size does not match the dimensions");
    std::string s = "P5\n" + std::to_string(px_w) + " " + std::to_string(px_h) + "\n255\n";
    s.append(gray.begin(), gray.end());
    return s;
}

void write_ppm(const RasterImage& img, const std::string& path) { write_file(ppm_bytes(img), path); }

void write_pgm(int px_w, int px_h, const std::vector<std::uint8_t>& gray, const std::string& path)
{
    write_file(pgm_bytes(px_w, px_h, gray), path);
}

}  // namespace parlike
