import { PilotClient } from "./client.js";

const canvas = document.getElementById("arena") as HTMLCanvasElement;
const slider = document.getElementById("strength") as HTMLInputElement;

const client = new PilotClient({ canvas, strengthSlider: slider });
client.start();
