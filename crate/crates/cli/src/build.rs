//! Turns a parsed file into library objects, running every validation the
//! library performs.

use std::collections::BTreeMap;
use std::sync::Arc;

use torsor_core::cohom::Cocycle1;
use torsor_core::cycles::CycleModel;
use torsor_core::ellcurve::{CurvePointGroup, FiniteField};
use torsor_core::fgab::{int, FgAbGroup, Int, IntMatrix};
use torsor_core::gmod::{pointmap_from_representatives, AdditionTable, FiniteGroup, GModule, GSet, TabulatedModule};
use torsor_core::rationality::WcRelationSystem;

use crate::error::InputError;
use crate::format::{GroupSpec, ModuleBody, ScenarioFile};

#[derive(Clone, Debug)]
pub enum BuiltModule {
    Presented(Arc<GModule>),
    Tabulated(Arc<TabulatedModule>),
}

/// The objects described by a file.
#[derive(Debug)]
pub struct Built {
    pub group: Option<Arc<FiniteGroup>>,
    pub modules: BTreeMap<String, BuiltModule>,
    /// Module names in file order.
    pub module_order: Vec<String>,
    pub gsets: BTreeMap<String, GSet>,
    pub model: Option<(CycleModel, usize)>,
    pub cocycle: Option<Cocycle1>,
    pub relations: Option<(WcRelationSystem, Option<Vec<Int>>)>,
    pub curve: Option<(Arc<CurvePointGroup>, u32)>,
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| int(x)).collect()
}

fn matrix_from_rows(rows: &[Vec<i64>], nrows: usize, ncols: usize) -> IntMatrix {
    if rows.is_empty() {
        IntMatrix::zeros(nrows, ncols)
    } else {
        IntMatrix::from_rows(rows)
    }
}

fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, InputError> {
    let ctx = InputError::invalid("[group]");
    match spec {
        GroupSpec::Cyclic { order } => FiniteGroup::cyclic(*order).map_err(ctx),
        GroupSpec::Table { table, generators } => {
            let g = FiniteGroup::from_table(table).map_err(InputError::invalid("[group]"))?;
            match generators {
                Some(gens) => g.with_generators(gens).map_err(ctx),
                None => Ok(g),
            }
        }
        GroupSpec::Permutations { degree, generators } => {
            let (g, idx) =
                FiniteGroup::from_permutations(*degree, generators).map_err(InputError::invalid("[group]"))?;
            g.with_generators(&idx).map_err(ctx)
        }
    }
}

fn presented<'a>(
    modules: &'a BTreeMap<String, BuiltModule>,
    name: &str,
    role: &str,
) -> Result<&'a Arc<GModule>, InputError> {
    match modules.get(name) {
        Some(BuiltModule::Presented(m)) => Ok(m),
        Some(BuiltModule::Tabulated(_)) => Err(InputError::Missing(format!(
            "{role} `{name}` must be a presented module"
        ))),
        None => Err(InputError::Missing(format!("{role} refers to unknown module `{name}`"))),
    }
}

pub fn build(file: &ScenarioFile) -> Result<Built, InputError> {
    let group = file.group.as_ref().map(build_group).transpose()?.map(Arc::new);
    let mut modules = BTreeMap::new();
    let mut module_order = Vec::new();
    let mut gsets = BTreeMap::new();
    if let Some(g) = &group {
        for m in &file.modules {
            let ctx = format!("[module {}]", m.name);
            let built = match &m.body {
                ModuleBody::Presented {
                    rank,
                    relations,
                    action,
                } => {
                    let cols: Vec<Vec<Int>> = relations.iter().map(|c| ints(c)).collect();
                    let base = FgAbGroup::new(*rank, IntMatrix::from_columns(*rank, &cols))
                        .map_err(InputError::invalid(ctx.clone()))?;
                    let mats: Vec<IntMatrix> = action.iter().map(|a| IntMatrix::from_rows(a)).collect();
                    BuiltModule::Presented(Arc::new(
                        GModule::from_generators(g.clone(), Arc::new(base), &mats).map_err(InputError::invalid(ctx))?,
                    ))
                }
                ModuleBody::Tabulated { addition, action } => {
                    let table = AdditionTable::new(addition).map_err(InputError::invalid(ctx.clone()))?;
                    BuiltModule::Tabulated(Arc::new(
                        TabulatedModule::from_generators(g.clone(), Arc::new(table), action)
                            .map_err(InputError::invalid(ctx))?,
                    ))
                }
            };
            module_order.push(m.name.clone());
            modules.insert(m.name.clone(), built);
        }
        for s in &file.gsets {
            let set = GSet::from_generator_images(g.clone(), s.size, &s.images)
                .map_err(InputError::invalid(format!("[gset {}]", s.name)))?;
            gsets.insert(s.name.clone(), set);
        }
    }
    let model = match &file.scenario {
        None => None,
        Some(spec) => {
            let ctx = || InputError::invalid("[scenario]");
            let points: &GSet = gsets
                .get(&spec.points)
                .ok_or_else(|| InputError::Missing(format!("[scenario] refers to unknown gset `{}`", spec.points)))?;
            let ambient = presented(&modules, &spec.ambient, "[scenario] ambient")?;
            let target = presented(&modules, &spec.target, "[scenario] target")?;
            let reps: Vec<Vec<Int>> = spec.pointmap.iter().map(|v| ints(v)).collect();
            let pointmap = pointmap_from_representatives(points, ambient, &reps).map_err(ctx())?;
            let triv_cols: Vec<Vec<Int>> = spec.triv.iter().map(|c| ints(c)).collect();
            if triv_cols.iter().any(|c| c.len() != ambient.rank()) {
                return Err(InputError::Missing(format!(
                    "[scenario] triv columns need {} entries",
                    ambient.rank()
                )));
            }
            let triv = IntMatrix::from_columns(ambient.rank(), &triv_cols);
            let phi = matrix_from_rows(&spec.phi, target.rank(), triv_cols.len());
            let labels = spec.components.clone().unwrap_or_else(|| vec![0; points.size()]);
            let model = CycleModel::new(
                points.clone(),
                ambient.clone(),
                pointmap,
                &triv,
                target.clone(),
                phi,
                labels,
            )
            .map_err(ctx())?;
            if spec.basepoint >= points.size() {
                return Err(InputError::Missing(format!(
                    "[scenario] basepoint {} is not a point of `{}`",
                    spec.basepoint, spec.points
                )));
            }
            Some((model, spec.basepoint))
        }
    };
    let cocycle = match &file.cocycle {
        None => None,
        Some(spec) => {
            let m = presented(&modules, &spec.module, "[cocycle] module")?;
            let values: Vec<Vec<Int>> = spec.values.iter().map(|v| ints(v)).collect();
            Some(Cocycle1::from_generators(m.clone(), &values).map_err(InputError::invalid("[cocycle]"))?)
        }
    };
    let relations = match &file.relations {
        None => None,
        Some(spec) => {
            let ctx = || InputError::invalid("[relations]");
            let mut sys = WcRelationSystem::new(&spec.generators).map_err(ctx())?;
            if let Some(d) = &spec.degree_one {
                sys.set_degree_one(d).map_err(ctx())?;
            }
            for r in &spec.relations {
                let (lhs, rhs) = r.split_once('=').unwrap_or((r.as_str(), "0"));
                sys.relate(lhs, rhs).map_err(ctx())?;
            }
            let query = spec
                .query
                .as_deref()
                .map(|q| sys.parse_element(q))
                .transpose()
                .map_err(ctx())?;
            Some((sys, query))
        }
    };
    let curve = match &file.curve {
        None => None,
        Some(c) => {
            let ctx = || InputError::invalid("[curve]");
            let field = FiniteField::new(c.p, c.n).map_err(ctx())?;
            let e = CurvePointGroup::over_prime_field(Arc::new(field), c.a, c.b).map_err(ctx())?;
            Some((Arc::new(e), c.base_degree))
        }
    };
    Ok(Built {
        group,
        modules,
        module_order,
        gsets,
        model,
        cocycle,
        relations,
        curve,
    })
}
