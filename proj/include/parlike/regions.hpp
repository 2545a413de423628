#ifndef PARLIKE_REGIONS_HPP
#define PARLIKE_REGIONS_HPP

// Jordan regions given by boundary samples (a closed polygon), winding-number
// membership and argument-principle degree counts.

#include <vector>

#include "parlike/dynamics.hpp"

namespace parlike {

enum class Orientation { Positive, Negative };

enum class Membership { Inside, Outside, Boundary };

struct Region {
    std::vector<Complex> boundary;  // closed implicitly, last -> first
    Orientation orientation = Orientation::Positive;

    // Orientation is taken from the sign of the enclosed area.
    static Region from_boundary(std::vector<Complex> pts);

    double signed_area() const;
    // Diagonal of the bounding box.
    double diameter() const;
    // Distance from z to the boundary polygon.
    double distance(Complex z) const;
    // No two non-adjacent segments intersect.
    bool is_simple() const;
    // Boundary traversed the other way, with flipped orientation.
    Region reversed() const;
};

Region circle_region(Complex center, double radius, int samples = 720);

// Boundary-ambiguity band: 1e-9 of the region diameter.
double boundary_epsilon(const Region& region);

// Winding number of the boundary polygon about z.
int winding_number(const Region& region, Complex z);

Membership contains(const Region& region, Complex z);
inline bool inside(const Region& region, Complex z) { return contains(region, z) == Membership::Inside; }

// Grid-accelerated membership with the same answers as contains(): cells
// away from the boundary carry a precomputed winding number, and a query in
// a boundary cell only inspects the segments crossing that cell.
class RegionLocator {
public:
    RegionLocator() = default;
    explicit RegionLocator(Region region);

    Membership locate(Complex z) const;
    bool inside(Complex z) const { return locate(z) == Membership::Inside; }
    const Region& region() const { return region_; }

private:
    Region region_;
    double eps_ = 0.0;
    double x0_ = 0.0, y0_ = 0.0, cell_ = 1.0;
    int nx_ = 0, ny_ = 0;
    std::vector<int> center_winding_;
    std::vector<std::vector<int>> cells_;  // segment indices per cell
};

// Number of solutions of num(z) = w den(z) inside the region, i.e. of
// f(z) = w counted without subtracting poles. The boundary polygon is
// refined until consecutive samples turn the image by at most 2 degrees
// and are at most 1e-2 of the diameter apart. Throws std::invalid_argument
// when w lies on the image of the boundary and NumericalError when the
// quadrature is not within 0.05 of an integer.
int map_degree_on(const MapSpec& map, const Region& domain, Complex w);

// The value before rounding, for diagnostics.
double map_degree_raw(const MapSpec& map, const Region& domain, Complex w);

// Densify a polygon so no segment is longer than max_step.
std::vector<Complex> densify(const std::vector<Complex>& pts, double max_step, bool closed = true);

// Preimage of b on the inverse branch through y, where f(y) = a, continued
// along the segment a -> b (halved until the nearest preimage is clear).
Complex continue_preimage(const MapSpec& map, Complex a, Complex b, Complex y);

// Boundaries of the components of f^{-1}(region): each boundary point of
// the region is lifted by continuation along the polygon; a lift closes
// after going k times around, k the degree on that component.
std::vector<Region> preimage_components(const MapSpec& map, const Region& region);

// The component of f^{-1}(region) containing z.
Region preimage_component(const MapSpec& map, const Region& region, Complex z);

// Region read from text: one "re im" pair per line.
Region read_region(const std::string& path);

}  // namespace parlike

#endif  // PARLIKE_REGIONS_HPP
