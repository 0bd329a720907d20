import { Component, OnDestroy, OnInit } from '@angular/core';

@Component({ selector: 'app-canvas', template: '<canvas></canvas>' })
export class CanvasComponent implements OnInit, OnDestroy {
  private frame = 0;

  ngOnInit() {
    this.frame = requestAnimationFrame(() => this.draw());
  }

  ngOnDestroy() {
    cancelAnimationFrame(this.frame);
  }

  draw() {
    console.log('frame');
  }
}
