#pragma once

#include <memory>
#include <string>

#include "concur/io.hpp"

#ifndef CONCUR_FIXTURE_DIR
#error "CONCUR_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace fixtures {

inline std::string path(const std::string& name)
{
    return std::string(CONCUR_FIXTURE_DIR) + "/" + name;
}

inline concur::LabelledAsyncSystem system(const std::string& name)
{
    return concur::io::system_from_json(concur::io::read_json_file(path(name)));
}

inline concur::SystemPtr system_ptr(const std::string& name)
{
    return std::make_shared<const concur::LabelledAsyncSystem>(system(name));
}

inline concur::LabelledPetriNet net(const std::string& name)
{
    return concur::io::net_from_json(concur::io::read_json_file(path(name)));
}

inline concur::SimplicialScheme scheme(const std::string& name)
{
    return concur::io::scheme_from_json(concur::io::read_json_file(path(name)));
}

}  // namespace fixtures
