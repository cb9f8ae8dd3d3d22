#pragma once

#include "deadend/abelian.hpp"
#include "deadend/core.hpp"
#include "deadend/error.hpp"
#include "deadend/euclidean.hpp"
#include "deadend/free_group.hpp"
#include "deadend/geolang.hpp"
#include "deadend/heis.hpp"
#include "deadend/laurent.hpp"
#include "deadend/search.hpp"
#include "deadend/sol.hpp"
#include "deadend/wreath.hpp"
