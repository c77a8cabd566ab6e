#pragma once

#include "builder.hpp"
#include "config.hpp"
#include "core.hpp"
#include "paths.hpp"
#include "search.hpp"
#include "store.hpp"
#include "symmetry.hpp"
