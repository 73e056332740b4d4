#pragma once

#include <map>
#include <string>

#include "gtl/algebra.hpp"
#include "gtl/surface.hpp"

#ifndef GTL_FIXTURE_DIR
#error "GTL_FIXTURE_DIR must point at fixtures/"
#endif

inline std::string fixture_path(const std::string& name) { return std::string(GTL_FIXTURE_DIR) + "/" + name; }

inline const gtl::ArcSystem& fixture(const std::string& name)
{
    static std::map<std::string, gtl::ArcSystem> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, gtl::ArcSystem::load(fixture_path(name + ".json"))).first;
    return it->second;
}

inline gtl::Angle T(const gtl::ArcSystem& sys, const char* h, int steps)
{
    return gtl::Angle::turn(sys.half_edge(h), steps);
}
