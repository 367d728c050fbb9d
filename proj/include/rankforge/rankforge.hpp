#pragma once

#include "rankforge/catalog.hpp"
#include "rankforge/errors.hpp"
#include "rankforge/expr.hpp"
#include "rankforge/lambert.hpp"
#include "rankforge/mock.hpp"
#include "rankforge/modular.hpp"
#include "rankforge/oracle.hpp"
#include "rankforge/products.hpp"
#include "rankforge/rational.hpp"
#include "rankforge/series.hpp"
#include "rankforge/zpoly.hpp"
