#include "slipstream/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "slipstream/errors.hpp"

namespace slipstream {

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

std::string quantity_tag(Quantity q) {
    switch (q) {
        case Quantity::vorticity: return "vorticity";
        case Quantity::stream: return "stream";
        default: return "generic";
    }
}

Quantity quantity_from_tag(const std::string& tag) {
    if (tag == "vorticity") return Quantity::vorticity;
    if (tag == "stream") return Quantity::stream;
    return Quantity::generic;
}

void write_snapshot(const std::filesystem::path& path, const ScalarField& f, double time) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ParseError("cannot open " + path.string() + " for writing");
    std::ostringstream hdr;
    hdr.precision(17);
    hdr << "SLIPSTREAM-FIELD 1 " << f.n_r() << " " << f.n_s() << " " << time << " "
        << quantity_tag(f.tag()) << "\n";
    os << hdr.str();
    os.write(reinterpret_cast<const char*>(f.data().data()),
             static_cast<std::streamsize>(f.data().size() * sizeof(double)));
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParseError("cannot open " + path.string());
    std::string line;
    std::getline(is, line);
    std::istringstream hdr(line);
    std::string magic, version, tag;
    std::size_t n_r = 0, n_s = 0;
    double time = 0.0;
    hdr >> magic >> version >> n_r >> n_s >> time >> tag;
    if (magic != "SLIPSTREAM-FIELD" || version != "1" || n_r == 0 || n_s == 0)
        throw ParseError("bad snapshot header in " + path.string());
    Snapshot s;
    s.time = time;
    Grid g(1.0, 2.0, n_r, n_s); // dims only; spacing is irrelevant for raw storage
    s.field = ScalarField(g, quantity_from_tag(tag));
    is.read(reinterpret_cast<char*>(s.field.data().data()),
            static_cast<std::streamsize>(n_r * n_s * sizeof(double)));
    if (!is) throw ParseError("truncated snapshot payload in " + path.string());
    return s;
}

} // namespace slipstream
