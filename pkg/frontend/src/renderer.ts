/**
 * three.js view: swept yarn tubes in scene colors with orbit/pan/zoom.
 */
import * as THREE from "three";
import { OrbitControls } from "three/examples/jsm/controls/OrbitControls.js";

import { Scene } from "./schema";
import { buildTube } from "./tube";

export class YarnRenderer {
  private readonly renderer: THREE.WebGLRenderer;
  private readonly scene3: THREE.Scene;
  private readonly camera: THREE.PerspectiveCamera;
  private readonly controls: OrbitControls;
  private yarnGroup: THREE.Group = new THREE.Group();

  constructor(canvas: HTMLCanvasElement) {
    this.renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
    this.scene3 = new THREE.Scene();
    this.scene3.background = new THREE.Color(0xf4f4f0);
    this.camera = new THREE.PerspectiveCamera(
      45,
      canvas.clientWidth / canvas.clientHeight,
      0.1,
      1000,
    );
    this.camera.position.set(15, -18, 14);
    this.camera.up.set(0, 0, 1);
    this.controls = new OrbitControls(this.camera, canvas);
    this.scene3.add(new THREE.AmbientLight(0xffffff, 0.6));
    const key = new THREE.DirectionalLight(0xffffff, 1.0);
    key.position.set(20, -15, 30);
    this.scene3.add(key);
    this.scene3.add(this.yarnGroup);

    const animate = () => {
      requestAnimationFrame(animate);
      this.controls.update();
      this.renderer.render(this.scene3, this.camera);
    };
    animate();
  }

  showScene(scene: Scene): void {
    this.scene3.remove(this.yarnGroup);
    this.yarnGroup.traverse((obj) => {
      if (obj instanceof THREE.Mesh) {
        obj.geometry.dispose();
        (obj.material as THREE.Material).dispose();
      }
    });
    this.yarnGroup = new THREE.Group();

    for (const yarn of scene.yarns) {
      const tube = buildTube(yarn.points as [number, number, number][], yarn.radius, 10);
      const geometry = new THREE.BufferGeometry();
      geometry.setAttribute("position", new THREE.BufferAttribute(tube.positions, 3));
      geometry.setIndex(new THREE.BufferAttribute(tube.indices, 1));
      geometry.computeVertexNormals();
      const [r, g, b] = yarn.color;
      const material = new THREE.MeshStandardMaterial({
        color: new THREE.Color(r / 255, g / 255, b / 255),
        roughness: 0.65,
      });
      this.yarnGroup.add(new THREE.Mesh(geometry, material));
    }
    this.scene3.add(this.yarnGroup);

    // keep the orbit target on the fabric midplane
    const spec = scene.meta.spec;
    this.controls.target.set(
      (spec.wales * spec.sigma * spec.stitch_width) / 2,
      (spec.courses * spec.tau * spec.course_height) / 2,
      scene.computed.b_actual / 2,
    );
  }
}
