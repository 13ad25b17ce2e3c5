#include "groundstate/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

namespace groundstate {

static_assert(std::endian::native == std::endian::little,
              "field dumps are little-endian; big-endian hosts are unsupported");

std::string boundary_name(Boundary bc) {
    return bc == Boundary::Neumann ? "neumann" : "dirichlet";
}

Boundary parse_boundary(const std::string& name) {
    if (name == "neumann") return Boundary::Neumann;
    if (name == "dirichlet") return Boundary::Dirichlet;
    throw config_error("unknown boundary condition: " + name);
}

void write_field(const Field& f, const std::string& data_path, const std::string& sidecar_path) {
    {
        std::ofstream out(data_path, std::ios::binary);
        if (!out) throw io_error("cannot open " + data_path + " for writing");
        auto v = f.values();
        out.write(reinterpret_cast<const char*>(v.data()),
                  static_cast<std::streamsize>(v.size() * sizeof(double)));
        if (!out) throw io_error("short write to " + data_path);
    }
    const Grid& g = f.grid();
    nlohmann::json side;
    side["dimension"] = g.dimension();
    side["side_lengths"] = std::vector<double>(g.domain().side_lengths().begin(),
                                               g.domain().side_lengths().end());
    side["nodes_per_axis"] = std::vector<int>(g.nodes_per_axis().begin(), g.nodes_per_axis().end());
    side["boundary"] = boundary_name(g.boundary());
    std::ofstream out(sidecar_path);
    if (!out) throw io_error("cannot open " + sidecar_path + " for writing");
    out << side.dump(2) << "\n";
}

Field read_field(const std::string& data_path, const std::string& sidecar_path) {
    nlohmann::json side;
    {
        std::ifstream in(sidecar_path);
        if (!in) throw io_error("cannot open " + sidecar_path);
        in >> side;
    }
    const auto sides = side.at("side_lengths").get<std::vector<double>>();
    const auto nodes = side.at("nodes_per_axis").get<std::vector<int>>();
    const auto bc = parse_boundary(side.at("boundary").get<std::string>());
    if (side.at("dimension").get<int>() != static_cast<int>(sides.size()))
        throw io_error("sidecar dimension disagrees with side_lengths");
    auto grid = Grid::create(DomainSpec(sides, bc), nodes);

    Field f(grid);
    std::ifstream in(data_path, std::ios::binary);
    if (!in) throw io_error("cannot open " + data_path);
    auto v = f.values();
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(v.size() * sizeof(double)))
        throw io_error("field dump " + data_path + " is shorter than the sidecar grid");
    return f;
}

} // namespace groundstate
