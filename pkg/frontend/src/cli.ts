/**
 * render --kind profile|transient --csv a.csv [b.csv ...] --out fig.svg
 *        [--model model.json] [--no-prediction] [--title "..."]
 *        [--style key=solid|dashed|dotted|dashdot ...]
 */
import { CsvError } from "./schema.js";
import type { FigureSpec, LineStyle } from "./model.js";
import { renderFigure } from "./render.js";

function usage(): string {
  return (
    "usage: dgadvect-render render --kind profile|transient " +
    "--csv file.csv [more.csv ...] --out figure.svg " +
    "[--model model.json] [--no-prediction] [--title text] [--style key=style ...]"
  );
}

export function main(argv: string[]): number {
  try {
    const args = [...argv];
    if (args[0] !== "render") {
      process.stderr.write(usage() + "\n");
      return 2;
    }
    args.shift();
    const csvPaths: string[] = [];
    const styleMap: Record<string, LineStyle> = {};
    let kind = "";
    let out = "";
    let modelOut: string | undefined;
    let includePrediction = true;
    let title: string | undefined;

    while (args.length > 0) {
      const flag = args.shift()!;
      switch (flag) {
        case "--kind":
          kind = args.shift() ?? "";
          break;
        case "--csv":
          while (args.length > 0 && !args[0].startsWith("--")) {
            csvPaths.push(args.shift()!);
          }
          break;
        case "--out":
          out = args.shift() ?? "";
          break;
        case "--model":
          modelOut = args.shift();
          break;
        case "--no-prediction":
          includePrediction = false;
          break;
        case "--title":
          title = args.shift();
          break;
        case "--style": {
          const pair = args.shift() ?? "";
          const [key, style] = pair.split("=");
          if (!key || !["solid", "dashed", "dotted", "dashdot"].includes(style)) {
            process.stderr.write(`bad --style value "${pair}"\n`);
            return 2;
          }
          styleMap[key] = style as LineStyle;
          break;
        }
        default:
          process.stderr.write(`unknown flag ${flag}\n${usage()}\n`);
          return 2;
      }
    }
    if (!kind || !out || csvPaths.length === 0) {
      process.stderr.write(usage() + "\n");
      return 2;
    }
    const spec: FigureSpec = {
      kind: kind as FigureSpec["kind"],
      csvPaths,
      out,
      includePrediction,
      styleMap,
      title,
    };
    renderFigure(spec, modelOut);
    process.stdout.write(`wrote ${out}\n`);
    return 0;
  } catch (err) {
    if (err instanceof CsvError) {
      process.stderr.write(`schema error: ${err.message}\n`);
      return 1;
    }
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
}

process.exit(main(process.argv.slice(2)));
