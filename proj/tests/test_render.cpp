#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "parlike/instances.hpp"
#include "parlike/render.hpp"

using namespace parlike;

namespace {

// 4-connected components of the zero pixels, by an explicit stack.
int black_components(const std::vector<std::uint8_t>& mask, int w, int h)
{
    std::vector<char> seen(mask.size(), 0);
    int comps = 0;
    std::vector<int> stack;
    for (int s = 0; s < w * h; ++s) {
        if (mask[s] != 0 || seen[s])
            continue;
        ++comps;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            const int p = stack.back();
            stack.pop_back();
            const int x = p % w, y = p / w;
            const int nb[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
            for (auto& q : nb) {
                if (q[0] < 0 || q[1] < 0 || q[0] >= w || q[1] >= h)
                    continue;
                const int o = q[1] * w + q[0];
                if (mask[o] == 0 && !seen[o]) {
                    seen[o] = 1;
                    stack.push_back(o);
                }
            }
        }
    }
    return comps;
}

// Black pixels not in the largest 4-connected component.
std::vector<int> stray_pixels(const std::vector<std::uint8_t>& mask, int w, int h)
{
    std::vector<int> label(mask.size(), -1), sizes;
    for (int s = 0; s < w * h; ++s) {
        if (mask[s] != 0 || label[s] >= 0)
            continue;
        const int id = int(sizes.size());
        sizes.push_back(0);
        std::vector<int> stack{s};
        label[s] = id;
        while (!stack.empty()) {
            const int p = stack.back();
            stack.pop_back();
            ++sizes[id];
            const int x = p % w, y = p / w;
            const int nb[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
            for (auto& q : nb) {
                if (q[0] < 0 || q[1] < 0 || q[0] >= w || q[1] >= h)
                    continue;
                const int o = q[1] * w + q[0];
                if (mask[o] == 0 && label[o] < 0) {
                    label[o] = id;
                    stack.push_back(o);
                }
            }
        }
    }
    const int main_id = int(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<int> out;
    for (int p = 0; p < w * h; ++p)
        if (label[p] >= 0 && label[p] != main_id)
            out.push_back(p);
    return out;
}

std::vector<std::uint8_t> dilate(const std::vector<std::uint8_t>& mask, int w, int h)
{
    std::vector<std::uint8_t> out = mask;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (mask[y * w + x] == 0)
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx)
                        if (x + dx >= 0 && y + dy >= 0 && x + dx < w && y + dy < h)
                            out[(y + dy) * w + x + dx] = 0;
    return out;
}

}  // namespace

TEST_CASE("classification examples")
{
    CHECK(classify_perone(0.0, {-1.0, 0.3}, 2000).kind == PixelClass::InK);
    CHECK(classify_perone(0.0, {0.5, 7.0}, 2000).kind == PixelClass::Escaped);
    CHECK(classify_perone(0.0, {0.5, 7.0}, 2000).step == 0);
    // The imaginary axis is invariant under z + 1/z.
    CHECK(classify_perone(0.0, {0.0, 2.0}, 2000).kind == PixelClass::InK);
    // A = 1: -1 is a superattracting fixed point.
    CHECK(classify_perone(1.0, -1.0, 2000).kind == PixelClass::InK);
    CHECK(classify_perone(1.0, 200.0, 2000).kind == PixelClass::Escaped);
    CHECK(classify_perone(1.0, 0.0, 10).kind == PixelClass::InK);
}

TEST_CASE("classification is odd in (A, z)")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    int mismatch = 0;
    for (int k = 0; k < 2000; ++k) {
        const Complex A(u(rng) / 2.0, u(rng) / 2.0), z(u(rng), u(rng));
        const PixelClass a = classify_perone(A, z, 300), b = classify_perone(-A, -z, 300);
        mismatch += a.kind != b.kind || a.step != b.step;
    }
    CHECK(mismatch == 0);
}

TEST_CASE("palette and viewport")
{
    CHECK(palette_color(0) == std::array<std::uint8_t, 3>{255, 0, 0});
    CHECK(palette_color(64) == palette_color(0));
    CHECK(palette_color(32) == std::array<std::uint8_t, 3>{0, 255, 255});
    for (int k = 0; k < 64; ++k) {
        const auto c = palette_color(k);
        CHECK(std::max({c[0], c[1], c[2]}) == 255);
        CHECK(std::min({c[0], c[1], c[2]}) == 0);
    }

    const Viewport vp{{1.0, -1.0}, 4.0, 2.0, 4, 2};
    CHECK(vp.pixel(0, 0) == Complex(-0.5, -0.5));
    CHECK(vp.pixel(3, 1) == Complex(2.5, -1.5));
    CHECK_THROWS_AS((Viewport{0.0, 0.0, 1.0, 4, 4}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Viewport{0.0, 1.0, 1.0, 0, 4}.validate()), std::invalid_argument);
}

TEST_CASE("image encodings")
{
    RasterImage img{2, 1, {1, 2, 3, 4, 5, 6}};
    CHECK(ppm_bytes(img) == std::string("P6\n2 1\n255\n\x01\x02\x03\x04\x05\x06", 17));
    CHECK(pgm_bytes(2, 1, {0, 255}) == std::string("P5\n2 1\n255\n\x00\xff", 13));
    CHECK_THROWS_AS(pgm_bytes(3, 1, {0, 255}), std::invalid_argument);
    RasterImage k{3, 1, {0, 0, 0, 128, 128, 128, 255, 0, 0}};
    CHECK(k_mask(k) == std::vector<std::uint8_t>{0, 128, 255});

    const std::string path = "test_render_tmp.ppm";
    write_ppm(img, path);
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    std::remove(path.c_str());
    CHECK(ss.str() == ppm_bytes(img));
    CHECK_THROWS_AS(write_ppm(img, "/nonexistent-dir/x.ppm"), std::runtime_error);
}

TEST_CASE("renders do not depend on the thread count")
{
    const Viewport vp{0.0, 4.0, 4.0, 96, 80};
    for (Complex A : {Complex(0.0), Complex(1.0), Complex(0.3, 0.6)}) {
        const RasterImage one = render_julia(A, vp, 400, 1);
        CHECK(render_julia(A, vp, 400, 3).pixels == one.pixels);
        CHECK(render_julia(A, vp, 400, 8).pixels == one.pixels);
    }
    const Viewport pv{0.0, 8.0, 8.0, 64, 64};
    CHECK(render_paramplane(pv, 200, 1).pixels == render_paramplane(pv, 200, 5).pixels);
}

TEST_CASE("Julia set of z + 1/z is the closed left half-plane")
{
    for (int n : {32, 64, 128}) {
        const Viewport vp{0.0, 4.0, 4.0, n, n};
        const auto mask = k_mask(render_julia(0.0, vp, kJuliaMaxIter, 1));
        int bad = 0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                bad += (mask[j * n + i] == 0) != (vp.pixel(i, j).real() < 0.0);
        CHECK(bad == 0);
    }
}

TEST_CASE("the A = 1 filled Julia set is connected up to cusps")
{
    // K has cusps thinner than a pixel, so the center-sampled mask can
    // break off single pixels; a one-pixel dilation reconnects them and the
    // stray pixels are genuinely in K.
    for (int n : {48, 96, 160}) {
        const Viewport vp{0.0, 6.0, 6.0, n, n};
        const auto mask = k_mask(render_julia(1.0, vp, kJuliaMaxIter, 1));
        CAPTURE(n);
        CHECK(std::count(mask.begin(), mask.end(), 128) == 0);
        CHECK(black_components(dilate(mask, n, n), n, n) == 1);
        for (int p : stray_pixels(mask, n, n))
            CHECK(classify_perone(1.0, vp.pixel(p % n, p / n), 20 * kJuliaMaxIter).kind == PixelClass::InK);
    }
}

TEST_CASE("resolution refinement")
{
    // Every black pixel of the coarse mask has a black fine pixel within
    // one coarse pixel of it.
    const int n = 64;
    const auto coarse = k_mask(render_julia(1.0, {0.0, 6.0, 6.0, n, n}, kJuliaMaxIter, 1));
    const auto fine = k_mask(render_julia(1.0, {0.0, 6.0, 6.0, 2 * n, 2 * n}, kJuliaMaxIter, 1));
    std::vector<std::uint8_t> down(std::size_t(n) * n, 255);
    for (int y = 0; y < 2 * n; ++y)
        for (int x = 0; x < 2 * n; ++x)
            if (fine[y * 2 * n + x] == 0)
                down[(y / 2) * n + x / 2] = 0;
    const auto near = dilate(down, n, n);
    int missing = 0;
    for (std::size_t p = 0; p < coarse.size(); ++p)
        missing += coarse[p] == 0 && near[p] != 0;
    CHECK(missing == 0);
}

TEST_CASE("parameter plane")
{
    const Viewport at1{1.0, 1e-3, 1e-3, 1, 1};
    CHECK(k_mask(render_paramplane(at1, kParamMaxIter, 1))[0] == 0);
    const Viewport at4{4.0, 1e-3, 1e-3, 1, 1};
    CHECK(k_mask(render_paramplane(at4, kParamMaxIter, 1))[0] == 255);

    // A symmetric grid: pixel (i, j) and (n-1-i, n-1-j) are A and -A.
    const int n = 81;
    const Viewport vp{0.0, 6.0, 6.0, n, n};
    const auto mask = k_mask(render_paramplane(vp, kParamMaxIter, 1));
    int asym = 0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            asym += mask[j * n + i] != mask[(n - 1 - j) * n + (n - 1 - i)];
    CHECK(asym == 0);
    CHECK(mask[(n / 2) * n + n / 2] == 0);  // A = 0
}

TEST_CASE("render of an assembled parabolic-like map")
{
    Assembly a = assemble_instance(example2_instance());
    REQUIRE(a.plm.has_value());
    // Pixel centers at -i and at 1.5.
    const Viewport vp{{0.75, -0.25}, 3.0, 1.5, 2, 1};
    CHECK(vp.pixel(0, 0) == Complex(0.0, -0.25));
    const Viewport centered{-kI, 1e-3, 1e-3, 1, 1};
    CHECK(k_mask(render_julia(*a.plm, centered, 500, 1))[0] == 0);
    const Viewport far{1.5, 1e-3, 1e-3, 1, 1};
    CHECK(k_mask(render_julia(*a.plm, far, 500, 1))[0] != 0);
}
