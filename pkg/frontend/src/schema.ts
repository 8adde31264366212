/**
 * Client-side validation of fetched scene documents. A scene must fully
 * validate before anything renders; invalid payloads surface an error.
 */
import { z } from "zod";

const rgb = z.tuple([z.number().int(), z.number().int(), z.number().int()]);
const point = z.tuple([z.number(), z.number(), z.number()]);

const familySchema = z.object({
  orientation: z.enum(["course_parallel", "wale_parallel"]),
  float_count: z.number().int().min(1),
  wale_shift: z.number().int().min(0),
  start_wale: z.number().int().min(0),
  start_course: z.number().int().min(0),
  yarn_radius: z.number().positive(),
});

const specSchema = z.object({
  gauge: z.number().positive(),
  stitch_width: z.number().positive(),
  course_height: z.number().positive(),
  bed_distance: z.number().positive(),
  sigma: z.number().gt(0).lte(1),
  tau: z.number().gt(0).lte(1),
  wales: z.number().int().min(2),
  courses: z.number().int().min(1),
  loop_samples: z.number().int().min(8),
  tube_segments: z.number().int().min(4),
  panel_yarn_radius: z.number().positive(),
  spacer_override_distance: z.number().positive().nullable(),
  families: z.array(familySchema),
});

const yarnSchema = z.object({
  role: z.enum(["panel_upper", "panel_lower", "spacer_h", "spacer_v"]),
  color: rgb,
  radius: z.number().positive(),
  strain: z.number().positive().optional(),
  points: z.array(point).min(2),
});

const collisionSchema = z.object({
  families: z.tuple([z.number().int(), z.number().int()]),
  segments: z.tuple([z.number().int(), z.number().int()]),
  distance: z.number().min(0),
});

export const sceneSchema = z.object({
  meta: z.object({
    version: z.string(),
    spec: specSchema,
    frame: z.number().int().min(0),
  }),
  computed: z.object({
    b_per_family: z.array(z.number()),
    b_actual: z.number().positive(),
    equilibrium_residual: z.number(),
    inclination_angles: z.array(z.number()),
    strains: z.array(z.number().positive()),
  }),
  yarns: z.array(yarnSchema),
  collisions: z.array(collisionSchema),
});

export type Scene = z.infer<typeof sceneSchema>;
export type SceneYarn = z.infer<typeof yarnSchema>;

export class SceneValidationError extends Error {}

/** Parse and validate a scene payload; throws naming the offending path. */
export function validateScene(data: unknown): Scene {
  const result = sceneSchema.safeParse(data);
  if (!result.success) {
    const issue = result.error.issues[0];
    const path = issue.path.join(".") || "document";
    throw new SceneValidationError(`${path}: ${issue.message}`);
  }
  return result.data;
}
