#pragma once

#include "nv/dyadic.hpp"
#include "nv/brick.hpp"
#include "nv/partition.hpp"
#include "nv/element.hpp"
#include "nv/generators.hpp"
#include "nv/factorization.hpp"
#include "nv/oracle.hpp"
#include "nv/io.hpp"
