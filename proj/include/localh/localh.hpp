#pragma once

#include "localh/corpus.hpp"
#include "localh/induced_map.hpp"
#include "localh/io.hpp"
#include "localh/local_module.hpp"
#include "localh/resolution.hpp"
#include "localh/structure.hpp"
