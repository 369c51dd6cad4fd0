use wasm_bindgen::prelude::*;

use forest_ends::corridor::analyze_corridor;
use forest_ends::forest::classify_components;
use forest_ends::generators::{
    contour, drainage_grs, dual_tree, fixture_corridor, fixture_window, ust_wilson, DrainageSpec, GridSpec, TieBreak,
};
use forest_ends::geometry::Coord;
use forest_ends::harness::{corridor_layers, render_svg, Layer, LayerData, ModelConfig, SvgView};

const SCALE: f64 = 14.0;

fn js_err<E: std::fmt::Display>(e: E) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// UST with its dual tree and the contour at distance `1/eps_den`.
#[wasm_bindgen]
pub fn ust_figure(size: usize, seed: u64, eps_den: i64) -> Result<String, JsValue> {
    let spec = GridSpec::new(size, size).map_err(js_err)?;
    let t = ust_wilson(&spec, seed);
    let d = dual_tree(&t, &spec).map_err(js_err)?;
    let c = contour(&t, &Coord::ratio(1, eps_den)).map_err(js_err)?;
    let layers =
        [LayerData::graph(Layer::Primal, &t), LayerData::graph(Layer::Dual, &d), LayerData::graph(Layer::Contour, &c)];
    Ok(render_svg(&layers, &SvgView::fit(&layers, 1.0, SCALE)))
}

/// Drainage network with open probability `p_percent / 100`.
#[wasm_bindgen]
pub fn drainage_figure(width: usize, height: usize, p_percent: u64, seed: u64) -> Result<String, JsValue> {
    let g = drainage_grs(&DrainageSpec::new(width, height, (p_percent, 100), TieBreak::Left, seed)).map_err(js_err)?;
    let layers = [LayerData::graph(Layer::Primal, &g)];
    Ok(render_svg(&layers, &SvgView::fit(&layers, 1.0, SCALE)))
}

/// Ends classes of the drainage network in the default window.
#[wasm_bindgen]
pub fn drainage_counts(width: usize, height: usize, p_percent: u64, seed: u64) -> Result<String, JsValue> {
    let g = drainage_grs(&DrainageSpec::new(width, height, (p_percent, 100), TieBreak::Left, seed)).map_err(js_err)?;
    let w = ModelConfig::Drainage { width, height, p: (p_percent, 100), tie_break: TieBreak::Left }.default_window();
    let c = classify_components(&g, &w).counts;
    Ok(format!(
        "finite {}, one-ended {}, two-ended {}, three or more {}",
        c.finite, c.one_ended, c.two_ended, c.trifurcating
    ))
}

/// Corridor fixture with doors and the hatched section between the
/// extreme door lines.
#[wasm_bindgen]
pub fn corridor_figure(l: i64, teeth: bool, k: i64, ell: i64) -> Result<String, JsValue> {
    let g = fixture_corridor(l, teeth).map_err(js_err)?;
    let a = analyze_corridor(&g, &Coord::int(k), &Coord::int(ell), &fixture_window(l)).map_err(js_err)?;
    let mut layers = vec![LayerData::graph(Layer::Primal, &g)];
    layers.extend(corridor_layers(&a));
    Ok(render_svg(&layers, &SvgView::fit(&layers, 1.0, SCALE)))
}

#[wasm_bindgen]
pub fn corridor_report(l: i64, teeth: bool, k: i64, ell: i64) -> Result<String, JsValue> {
    let g = fixture_corridor(l, teeth).map_err(js_err)?;
    let a = analyze_corridor(&g, &Coord::int(k), &Coord::int(ell), &fixture_window(l)).map_err(js_err)?;
    Ok(a.report.to_json())
}
