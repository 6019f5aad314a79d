import { ApiClient } from "./api.js";
import { GameFlow } from "./flow.js";
import { mountApp } from "./ui.js";

const params = new URLSearchParams(window.location.search);
const serviceUrl =
  params.get("service") ?? `${window.location.protocol}//${window.location.hostname}:8000`;

const api = new ApiClient(serviceUrl);
const flow = new GameFlow(api, window.sessionStorage);
const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");
mountApp(root, api, flow);
