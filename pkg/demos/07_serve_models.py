"""
Publishing models over HTTP for the interactive viewer
======================================================

The store keeps corpora and built models content-addressed on disk; the
server exposes them read-only. Everything the viewer needs - graphs,
details, search, date windows, traces - is a GET away. This walk uses
the in-process test client, so no port is opened; in production run
`tutorlens serve --store work/store` (or uvicorn directly).
"""

import tempfile

from fastapi.testclient import TestClient

from tutorlens import ModelStore, demo_config, synthesize_corpus
from tutorlens.server import create_app

config = demo_config()
logs = synthesize_corpus(config, 87, seed=0)

root = tempfile.mkdtemp(prefix="tutorlens-store-")
store = ModelStore(root)
corpus_id = store.add_corpus(config, logs)
model_id = store.build_model(corpus_id, method="xmeans", feature="errors")
print(f"store at {root}")
print(f"  corpus {corpus_id}")
print(f"  model  {model_id}")

client = TestClient(create_app(store))

models = client.get("/models").json()
print(f"\nGET /models -> {len(models)} model(s),"
      f" first has {models[0]['n_students']} students"
      f" in k={models[0]['k']} cluster(s)")

clusters = client.get(f"/models/{model_id}/clusters").json()
for cluster in clusters:
    print(f"  cluster {cluster['index']}: {cluster['n_students']} students,"
          f" {cluster['n_states']} states")

# The graph endpoint serves the laid-out picture, already pruned.
graph = client.get(
    f"/models/{model_id}/clusters/0/graph",
    params={"min_node_freq": 30, "min_edge_freq": 10},
).json()
print(f"\ncluster 0 graph above 30%: {len(graph['nodes'])} nodes,"
      f" {len(graph['edges'])} edges, bands {sorted(graph['bands'])}")

# Node fills and outlines travel with the payload, so the viewer never
# hardcodes a color.
node = graph["nodes"][0]
print(f"first node '{node['label']}' fill rgb{tuple(node['fill'])}"
      f" outline rgb{tuple(node['outline'])}")

hits = client.get(f"/models/{model_id}/clusters/0/search",
                  params={"q": "f2t4"}).json()["matches"]
print(f"\nsearch 'f2t4': {len(hits)} hits, busiest"
      f" {hits[0]['label']} at {hits[0]['frequency']:.1f}%")

detail = client.get(
    f"/models/{model_id}/clusters/0/states/{hits[0]['id']}"
).json()
print(f"state detail: kind {detail['kind']}, {detail['count']} students,"
      f" {len(detail['outgoing'])} outgoing arcs")

sid = logs[0].student_id
trace = client.get(f"/models/{model_id}/students/{sid}/trace").json()
print(f"\ntrace of {sid}: {len(trace['steps'])} steps,"
      f" {len(trace['nodes'])} distinct states")

# Errors come back structured, never as bare strings.
missing = client.get(f"/models/{model_id}/clusters/99/graph")
print(f"\nGET bad cluster -> {missing.status_code}"
      f" {missing.json()['detail']['code']}")
