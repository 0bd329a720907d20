import { Component, OnInit } from '@angular/core';

@Component({ selector: 'app-canvas', template: '<canvas></canvas>' })
export class CanvasComponent implements OnInit {
  ngOnInit() {
    requestAnimationFrame(() => this.draw());
  }

  draw() {
    console.log('frame');
  }
}
