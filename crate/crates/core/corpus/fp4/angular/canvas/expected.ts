import { Component, OnInit } from '@angular/core';

@Component({ selector: 'app-canvas', template: '<canvas></canvas>' })
export class CanvasComponent implements OnInit {
  private rafId?: number;
  ngOnInit() {
    this.rafId = requestAnimationFrame(() => this.draw());
  }

  draw() {
    console.log('frame');
  }

  ngOnDestroy() {
    cancelAnimationFrame(this.rafId);
  }
}
