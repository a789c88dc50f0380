#pragma once

#include <cyclic/plane_graph.hh>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testing
{
    inline auto data_file(const std::string & relative) -> std::string
    {
        std::ifstream in(std::string(CYCLIC_DATA) + "/" + relative);
        if (! in)
            throw std::runtime_error("missing fixture " + relative);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    inline auto corpus_graph(const std::string & name) -> cyclic::PlaneGraph
    {
        return cyclic::parse_graph(data_file("graphs/" + name + ".graph"));
    }

    inline const std::vector<std::string> corpus = {"k4", "cube", "wheel5", "dodecahedron", "prism5", "octahedron", "icosahedron",
        "random_0", "random_1", "random_2", "random_3"};
}
