// Recorded solver responses (protocol_version 1), captured from the
// real fit endpoint for three-point documents:
//   certified   - gentle turn, psi below the threshold, G2
//   uncertified - sharp turn past the threshold, still G2
//   jump        - very sharp turn with a genuine curvature jump
import type { FitResponse } from "../src/protocol.js";

export const CERTIFIED_RESPONSE: FitResponse = {
  "polylines": [
    [
      [
        0,
        0
      ],
      [
        0.491558805014,
        0.136901606616
      ],
      [
        1,
        0.2
      ]
    ],
    [
      [
        1,
        0.2
      ],
      [
        1.50524009787,
        0.137623928009
      ],
      [
        2,
        4.99775607536e-16
      ]
    ]
  ],
  "protocol_version": 1,
  "report": {
    "constants": {
      "d": 1.19814023474,
      "psi_deg": 37.0936538522,
      "t_bar": 2.25232946416,
      "t_star": 2.73347515456
    },
    "converged": true,
    "per_node": [
      {
        "alpha_in_deg": -11.3099324745,
        "alpha_out_deg": 11.3099324735,
        "certified_by_psi": true,
        "g2_within_tol": true,
        "kappa_jump": 2.05799821629e-11,
        "node_index": 1,
        "psi_deg": -22.619864948
      }
    ],
    "per_segment": [
      {
        "alpha_deg": 5.66288892548,
        "beta_deg": -11.3099324745,
        "breadth": 1.01980390272,
        "energy": 0.0285234291769,
        "kind": "elastica_arc",
        "params_t1": -3.14159265354,
        "params_t2": -2.57080571742
      },
      {
        "alpha_deg": 11.3099324735,
        "beta_deg": -5.66288892419,
        "breadth": 1.01980390272,
        "energy": 0.0285234291721,
        "kind": "elastica_arc",
        "params_t1": -0.57078693613,
        "params_t2": 3.21157665581e-12
      }
    ],
    "sweeps": 17,
    "total_energy": 0.057046858349
  }
} as unknown as FitResponse;

export const UNCERTIFIED_RESPONSE: FitResponse = {
  "polylines": [
    [
      [
        0,
        0
      ],
      [
        0.499457147132,
        -0.0972302081373
      ],
      [
        1,
        -9.24141234385e-18
      ]
    ],
    [
      [
        1,
        0
      ],
      [
        1.29420865959,
        0.29266914882
      ],
      [
        1.44091733443,
        0.682067644983
      ],
      [
        1.5,
        1.1
      ]
    ]
  ],
  "protocol_version": 1,
  "report": {
    "constants": {
      "d": 1.19814023474,
      "psi_deg": 37.0936538522,
      "t_bar": 2.25232946416,
      "t_star": 2.73347515456
    },
    "converged": true,
    "per_node": [
      {
        "alpha_in_deg": 29.0793120431,
        "alpha_out_deg": -36.4767331765,
        "certified_by_psi": false,
        "g2_within_tol": true,
        "kappa_jump": -3.99915656146e-11,
        "node_index": 1,
        "psi_deg": 65.5560452196
      }
    ],
    "per_segment": [
      {
        "alpha_deg": -14.679678856,
        "beta_deg": 29.0793120431,
        "breadth": 1,
        "energy": 0.187296418886,
        "kind": "elastica_arc",
        "params_t1": 4.49018905243e-11,
        "params_t2": 0.982055884441
      },
      {
        "alpha_deg": -36.4767331765,
        "beta_deg": 18.5224916251,
        "breadth": 1.20830459736,
        "energy": 0.239535896193,
        "kind": "elastica_arc",
        "params_t1": 2.01005799723,
        "params_t2": 3.14159265359
      }
    ],
    "sweeps": 20,
    "total_energy": 0.426832315079
  }
} as unknown as FitResponse;

export const JUMP_RESPONSE: FitResponse = {
  "polylines": [
    [
      [
        0,
        0
      ],
      [
        0.319355356905,
        0.332167242098
      ],
      [
        0.766071778782,
        0.382610226872
      ],
      [
        1,
        0
      ]
    ],
    [
      [
        1,
        0
      ],
      [
        0.720339056028,
        -0.446247624884
      ],
      [
        0.2,
        -0.6
      ]
    ]
  ],
  "protocol_version": 1,
  "report": {
    "constants": {
      "d": 1.19814023474,
      "psi_deg": 37.0936538522,
      "t_bar": 2.25232946416,
      "t_star": 2.73347515456
    },
    "converged": true,
    "per_node": [
      {
        "alpha_in_deg": -89.9999999999,
        "alpha_out_deg": 53.1301023542,
        "certified_by_psi": false,
        "g2_within_tol": false,
        "kappa_jump": -0.225438818613,
        "node_index": 1,
        "psi_deg": -143.130102354
      }
    ],
    "per_segment": [
      {
        "alpha_deg": 52.9063461477,
        "beta_deg": -89.9999999999,
        "breadth": 1,
        "energy": 1.32254146519,
        "kind": "elastica_arc",
        "params_t1": -3.14159265359,
        "params_t2": -0.889263189427
      },
      {
        "alpha_deg": 53.1301023542,
        "beta_deg": -27.5284813813,
        "breadth": 1,
        "energy": 0.579948260673,
        "kind": "elastica_arc",
        "params_t1": -1.45538230628,
        "params_t2": -6.00010024906e-13
      }
    ],
    "sweeps": 3,
    "total_energy": 1.90248972586
  }
} as unknown as FitResponse;

