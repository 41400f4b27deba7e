export { parseCsv, columnIndex, type CsvTable } from "./csv.js";
export { makeScale, type Scale, type ScaleKind } from "./scale.js";
export { builtinRecipes, loadRecipe, type FigureRecipe } from "./recipes.js";
export { render, extractCurves, type RenderResult } from "./render.js";
export { encodePng } from "./png.js";
export { Raster, PALETTE } from "./raster.js";
export { svgDocument, type Curve } from "./svg.js";
